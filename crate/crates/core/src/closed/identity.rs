use crate::error::{Error, Result};

/// Closed form of the complete homogeneous symmetric polynomial of degree
/// `k` in `x_1..x_n`:
///
/// `sum_{a_1 + .. + a_n = k} x_1^{a_1} .. x_n^{a_n} = sum_i x_i^{k+n-1} / prod_{j != i} (x_i - x_j)`
///
/// valid for `k >= 1 - n` (the left side is empty, hence 0, for negative `k`).
pub fn composition_power_sum(x: &[f64], k: i64) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Arity(format!("need at least 2 values, got {n}")));
    }
    let exponent = k + n as i64 - 1;
    if exponent < 0 {
        return Err(Error::Arity(format!("k = {k} is below 1 - n = {}", 1 - n as i64)));
    }
    for (i, &a) in x.iter().enumerate() {
        if let Some(&b) = x[i + 1..].iter().find(|&&b| b == a) {
            return Err(Error::NotDistinct(a, b));
        }
    }
    Ok((0..n)
        .map(|i| {
            let denom: f64 = (0..n).filter(|&j| j != i).map(|j| x[i] - x[j]).product();
            x[i].powi(exponent as i32) / denom
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_expansions() {
        let (a, b) = (0.3, 0.7);
        assert!((composition_power_sum(&[a, b], 1).unwrap() - (a + b)).abs() < 1e-15);
        assert!((composition_power_sum(&[2.0, 3.0], 2).unwrap() - 19.0).abs() < 1e-12);
        assert!((composition_power_sum(&[2.0, 3.0], 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(composition_power_sum(&[2.0, 3.0, 5.0], -1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(composition_power_sum(&[1.0], 1).unwrap_err().code(), "E_ARITY");
        assert_eq!(composition_power_sum(&[1.0, 2.0], -2).unwrap_err().code(), "E_ARITY");
        assert_eq!(composition_power_sum(&[1.0, 1.0], 1).unwrap_err().code(), "E_NOT_DISTINCT");
    }
}
