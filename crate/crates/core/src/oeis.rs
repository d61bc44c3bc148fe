//! Bundled prefixes of the integer sequences used as offline references.

use crate::error::{Error, Result};
use crate::exactnum::{parse_int, ExactInt};

const A000108: &str = include_str!("../data/A000108.txt");
const A000139: &str = include_str!("../data/A000139.txt");

fn parse(name: &str, data: &str) -> Result<Vec<ExactInt>> {
    data.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            parse_int(l).map_err(|_| Error::inconsistent(format!("bad term `{l}` in bundled {name}")))
        })
        .collect()
}

/// Catalan numbers C_0, C_1, ...
pub fn a000108() -> Result<Vec<ExactInt>> {
    parse("A000108", A000108)
}

/// 2(3n)!/((2n+1)!(n+1)!), n = 0, 1, ...
pub fn a000139() -> Result<Vec<ExactInt>> {
    parse("A000139", A000139)
}

/// Looks a bundled sequence up by its A-number.
pub fn sequence(id: &str) -> Result<Vec<ExactInt>> {
    match id {
        "A000108" => a000108(),
        "A000139" => a000139(),
        _ => Err(Error::domain(format!("sequence {id} is not bundled"))),
    }
}
