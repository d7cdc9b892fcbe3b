//! Scalar type shared by real and complex spaces.
//!
//! All coordinates are stored as `Complex64`; real spaces keep imaginary
//! parts identically zero and the [`crate::space::Field`] tag enforces that at
//! the boundaries. On the wire a scalar is a plain number when its imaginary
//! part is zero and a `[re, im]` pair otherwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type Scalar = Complex64;

/// `z/|z|`, with the convention that near-zero scalars give `1` (so the
/// result is always unimodular).
pub fn unit_phase(z: Scalar) -> Scalar {
    let m = z.norm();
    if m < crate::config::DEGENERATE_NORM {
        Scalar::new(1.0, 0.0)
    } else {
        z / m
    }
}

/// Wire form of one scalar: `3.5` or `[3.5, -1.0]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Scalar> for ScalarRepr {
    fn from(z: Scalar) -> Self {
        if z.im == 0.0 {
            ScalarRepr::Real(z.re)
        } else {
            ScalarRepr::Complex([z.re, z.im])
        }
    }
}

impl From<ScalarRepr> for Scalar {
    fn from(r: ScalarRepr) -> Self {
        match r {
            ScalarRepr::Real(x) => Scalar::new(x, 0.0),
            ScalarRepr::Complex([re, im]) => Scalar::new(re, im),
        }
    }
}

/// Serde adapter for single `Scalar` fields.
pub mod scalar_one {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        Ok(ScalarRepr::deserialize(d)?.into())
    }
}

/// Serde adapter for `Vec<Scalar>` fields.
pub mod scalar_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<ScalarRepr> = v.iter().map(|&z| z.into()).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let reprs: Vec<ScalarRepr> = Vec::deserialize(d)?;
        Ok(reprs.into_iter().map(Scalar::from).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_phase_is_unimodular() {
        let z = Scalar::new(3.0, -4.0);
        assert!((unit_phase(z).norm() - 1.0).abs() < 1e-15);
        assert_eq!(unit_phase(Scalar::new(0.0, 0.0)), Scalar::new(1.0, 0.0));
    }

    #[test]
    fn repr_round_trips() {
        for z in [Scalar::new(2.5, 0.0), Scalar::new(0.0, -1.0), Scalar::new(1.0, 2.0)] {
            let r: ScalarRepr = z.into();
            let back: Scalar = r.into();
            assert_eq!(z, back);
        }
    }

    #[test]
    fn real_scalars_serialize_as_numbers() {
        let r: ScalarRepr = Scalar::new(2.0, 0.0).into();
        assert_eq!(serde_json::to_string(&r).unwrap(), "2.0");
        let c: ScalarRepr = Scalar::new(2.0, 1.0).into();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[2.0,1.0]");
    }
}
