//! Dimension of the Hitchin component of a hyperbolic polygon reflection group
//! in `PGL(n, R)`.

use num_rational::Ratio;
use thiserror::Error;

use crate::lorentz::{polygon_exists, Angle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HitchinError {
    #[error("n must be at least 2, got {0}")]
    SmallN(u32),
    #[error("angle denominators must be at least 2, got {0}")]
    SmallAngle(u32),
    #[error("a polygon needs at least 3 angles, got {0}")]
    TooFewAngles(usize),
    #[error("no compact hyperbolic polygon has angles pi/m for m = {0:?}")]
    NotHyperbolic(Vec<u32>),
}

/// `-(n^2 - 1) + sum_{l=2..n} sum_i floor(l (m_i - 1) / m_i)` for the polygon
/// with angles `pi / m_i`.
pub fn hitchin_dimension(n: u32, angles: &[u32]) -> Result<i64, HitchinError> {
    if n < 2 {
        return Err(HitchinError::SmallN(n));
    }
    if let Some(&m) = angles.iter().find(|&&m| m < 2) {
        return Err(HitchinError::SmallAngle(m));
    }
    if angles.len() < 3 {
        return Err(HitchinError::TooFewAngles(angles.len()));
    }
    let polygon: Vec<Angle> =
        angles.iter().map(|&m| Angle::PiFraction(Ratio::new(1, m as i64))).collect();
    if !polygon_exists(&polygon).expect("at least three angles") {
        return Err(HitchinError::NotHyperbolic(angles.to_vec()));
    }
    let n = n as i64;
    let mut dim = -(n * n - 1);
    for l in 2..=n {
        for &m in angles {
            let m = m as i64;
            dim += l * (m - 1) / m;
        }
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_angled_pentagon() {
        assert_eq!(hitchin_dimension(2, &[2; 5]), Ok(2));
        assert_eq!(hitchin_dimension(3, &[2; 5]), Ok(2));
    }

    #[test]
    fn triangle_237() {
        assert_eq!(hitchin_dimension(2, &[2, 3, 7]), Ok(0));
    }

    #[test]
    fn non_hyperbolic_rejected() {
        assert_eq!(hitchin_dimension(2, &[2; 4]), Err(HitchinError::NotHyperbolic(vec![2; 4])));
        assert_eq!(hitchin_dimension(2, &[2, 3, 6]), Err(HitchinError::NotHyperbolic(vec![2, 3, 6])));
        assert_eq!(hitchin_dimension(1, &[2; 5]), Err(HitchinError::SmallN(1)));
        assert_eq!(hitchin_dimension(2, &[2, 1, 2]), Err(HitchinError::SmallAngle(1)));
    }
}
