//! Angle parsing: decimal radians or exact multiples of pi in the
//! string forms "pi", "2pi/3", "-pi/4", "0.5pi".
//!
//! Symbolic forms evaluate as (coefficient * pi) / denominator in that
//! order, so entered fixtures agree bitwise with the stored ones.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t: String = text
        .trim()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    if t.is_empty() {
        return Err("empty angle".into());
    }
    match t.find("pi") {
        None => t
            .parse::<f64>()
            .map_err(|_| format!("cannot parse angle {text:?} (expected radians or n pi/m)")),
        Some(pos) => {
            let head = &t[..pos];
            let tail = &t[pos + 2..];
            let coef = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other
                    .parse::<f64>()
                    .map_err(|_| format!("bad coefficient in angle {text:?}"))?,
            };
            let mut value = coef * PI;
            if !tail.is_empty() {
                let den = tail
                    .strip_prefix('/')
                    .ok_or_else(|| format!("bad denominator in angle {text:?}"))?
                    .parse::<f64>()
                    .map_err(|_| format!("bad denominator in angle {text:?}"))?;
                if den == 0.0 {
                    return Err(format!("zero denominator in angle {text:?}"));
                }
                value /= den;
            }
            if !value.is_finite() {
                return Err(format!("angle {text:?} is not finite"));
            }
            Ok(value)
        }
    }
}
