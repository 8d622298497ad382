//! Time expressions: `<rational>`, `<rational>pi` or `<rational>pi/<integer>`,
//! e.g. `3`, `0.25`, `-1/2`, `pi/2`, `2pi/7`.

use std::f64::consts::PI;

pub fn parse(expr: &str) -> Result<f64, String> {
    let s = expr.trim();
    let err = || format!("bad time expression {expr:?} (expected e.g. 1.5, 2pi/7, pi/2)");
    let value = match s.split_once("pi") {
        None => rational(s).ok_or_else(err)?,
        Some((coef, rest)) => {
            let coef = match coef {
                "" => 1.0,
                "-" => -1.0,
                c => rational(c).ok_or_else(err)?,
            };
            let divisor = match rest {
                "" => 1.0,
                r => {
                    let d: u64 = r.strip_prefix('/').and_then(|d| d.parse().ok()).ok_or_else(err)?;
                    if d == 0 {
                        return Err(err());
                    }
                    d as f64
                }
            };
            coef * PI / divisor
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(err())
    }
}

fn rational(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().ok()?;
            let q: u64 = q.parse().ok().filter(|&q| q != 0)?;
            Some(p as f64 / q as f64)
        }
        None if s.chars().all(|c| c.is_ascii_digit() || c == '.' || c == '-') => s.parse().ok(),
        None => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse("2pi/7").unwrap(), 2.0 * PI / 7.0);
        assert_eq!(parse("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse("pi").unwrap(), PI);
        assert_eq!(parse("-pi").unwrap(), -PI);
        assert_eq!(parse("1/2pi").unwrap(), PI / 2.0);
        assert_eq!(parse("3").unwrap(), 3.0);
        assert_eq!(parse("0.25").unwrap(), 0.25);
        assert_eq!(parse("-1/4").unwrap(), -0.25);
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "pi/0", "2pi/x", "1/0", "tau", "2pi7", "pi/2.5", "1e3", "inf", "nan"] {
            assert!(parse(bad).is_err(), "{bad:?} accepted");
        }
    }
}
