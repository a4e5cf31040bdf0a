use crate::error::{Error, Result};

/// 2-adic valuation; `ord2(0)` is taken as 0.
pub fn ord2(m: u64) -> u32 {
    if m == 0 {
        0
    } else {
        m.trailing_zeros()
    }
}

/// Rejects anything that is not an odd prime power `>= 3`.
pub fn validate_q(q: u32) -> Result<()> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::BadParameter(format!("q must be an odd prime power, got {q}")));
    }
    let p = (3..=q).find(|d| q % d == 0).expect("q >= 3 has a divisor");
    let mut x = q;
    while x % p == 0 {
        x /= p;
    }
    if x != 1 {
        return Err(Error::BadParameter(format!("q must be a prime power, got {q}")));
    }
    Ok(())
}

/// `ord_2(q^2 - 1)`.
pub fn ord2_qsq_minus_1(q: u32) -> Result<u32> {
    validate_q(q)?;
    let q = q as u64;
    Ok(ord2(q * q - 1))
}

/// `q^e mod 4` for odd `q`.
pub fn pow_mod4(q: u32, e: u32) -> u32 {
    if q % 4 == 1 || e % 2 == 0 {
        1
    } else {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(ord2_qsq_minus_1(3).unwrap(), 3);
        assert_eq!(ord2_qsq_minus_1(7).unwrap(), 4);
        assert_eq!(ord2_qsq_minus_1(5).unwrap(), 3);
        assert_eq!(ord2_qsq_minus_1(9).unwrap(), 4);
        assert_eq!(ord2_qsq_minus_1(17).unwrap(), 5);
    }

    #[test]
    fn invalid_q() {
        for q in [0, 1, 2, 4, 15, 21, 100] {
            assert!(matches!(validate_q(q), Err(Error::BadParameter(_))), "{q}");
        }
        for q in [3, 5, 9, 25, 27, 49, 121] {
            assert!(validate_q(q).is_ok(), "{q}");
        }
    }

    #[test]
    fn residues() {
        for q in [3u32, 5, 7, 9, 11] {
            for e in 0..6 {
                assert_eq!(pow_mod4(q, e), (q as u64).pow(e) as u32 % 4);
            }
        }
    }
}
