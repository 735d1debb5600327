//! Integer lists and ranges as accepted by `--m` and `--p`.

use weyltrunc_core::is_prime;

/// How a list of values was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    /// `a..b`, inclusive at both ends.
    Range(i64, i64),
    /// `a` or `a,b,c`.
    List(Vec<i64>),
}

pub fn parse_spec(s: &str) -> Result<Spec, String> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("{t:?} is not an integer"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Spec::Range(a, b));
    }
    Ok(Spec::List(s.split(',').map(int).collect::<Result<_, _>>()?))
}

impl Spec {
    pub fn values(&self) -> Vec<i64> {
        match self {
            Spec::Range(a, b) => (*a..=*b).collect(),
            Spec::List(v) => v.clone(),
        }
    }

    /// A range of `p` values is read as the primes it contains.
    pub fn p_values(&self) -> Vec<i64> {
        match self {
            Spec::Range(a, b) => (*a..=*b).filter(|&p| is_prime(p)).collect(),
            Spec::List(v) => v.clone(),
        }
    }
}

/// Parses `--m`: positive integers only.
pub fn parse_m(s: &str) -> Result<Spec, String> {
    let spec = parse_spec(s)?;
    if spec.values().iter().any(|&m| m < 1) {
        return Err("m must be a positive integer".into());
    }
    Ok(spec)
}
