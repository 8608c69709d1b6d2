//! Reduces the n = 9 Table 2 scheme step by step down to n = 5, checking
//! that every step is again a partition.

use signcert::data;
use signcert::scheme::reduce_even_rows;

fn main() -> signcert::Result<()> {
    let mut scheme = data::table2()?;
    println!("n = {}: {} rows, partition defects: {}", scheme.n, scheme.rows.len(), scheme.partition_defects().len());
    while scheme.n > 5 {
        scheme = reduce_even_rows(&scheme)?;
        println!("n = {}: {} rows, partition defects: {}", scheme.n, scheme.rows.len(), scheme.partition_defects().len());
    }
    print!("{}", scheme.to_text());
    Ok(())
}
