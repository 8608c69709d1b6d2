//! Versioned data files compiled into the library.
//!
//! * `table1_scheme.{json,txt}`: the tuple scheme for `n = 9`.
//! * `table2_scheme.txt`: the row-structured scheme used for reductions.
//! * `certificates.json`: one certificate per (tuple, case) obligation.
//! * `leg_certificates.json`: per-leg `k = 1` certificates for twin legs.
//! * `witnesses.json`: refuting witnesses for every non-twin bad leg.

use crate::certify::{parse_certificates, parse_witnesses, Certificate, Witness};
use crate::scheme::{parse_scheme, ProofScheme};
use crate::Result;

pub const TABLE1_JSON: &str = include_str!("../data/v1/table1_scheme.json");
pub const TABLE1_TEXT: &str = include_str!("../data/v1/table1_scheme.txt");
pub const TABLE2_TEXT: &str = include_str!("../data/v1/table2_scheme.txt");
pub const CERTIFICATES_JSON: &str = include_str!("../data/v1/certificates.json");
pub const LEG_CERTIFICATES_JSON: &str = include_str!("../data/v1/leg_certificates.json");
pub const WITNESSES_JSON: &str = include_str!("../data/v1/witnesses.json");

pub fn table1() -> Result<ProofScheme> {
    parse_scheme(TABLE1_JSON)
}

pub fn table2() -> Result<ProofScheme> {
    parse_scheme(TABLE2_TEXT)
}

pub fn certificates() -> Result<Vec<Certificate>> {
    parse_certificates(CERTIFICATES_JSON)
}

pub fn leg_certificates() -> Result<Vec<Certificate>> {
    parse_certificates(LEG_CERTIFICATES_JSON)
}

pub fn witnesses() -> Result<Vec<Witness>> {
    parse_witnesses(WITNESSES_JSON)
}
