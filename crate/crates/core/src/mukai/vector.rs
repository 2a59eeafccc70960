use serde::Serialize;

use super::LatticeError;

/// `(r, (L^2), s)` for a sheaf of rank `r`, determinant `L` and
/// `chi = r + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MukaiVector {
    r: i64,
    selfint: i64,
    s: i64,
}

impl MukaiVector {
    pub fn new(r: i64, selfint: i64, s: i64) -> Result<Self, LatticeError> {
        if r < 0 {
            return Err(LatticeError::NegativeRank(r));
        }
        if selfint % 2 != 0 {
            return Err(LatticeError::OddSelfIntersection(selfint));
        }
        Ok(MukaiVector { r, selfint, s })
    }

    pub fn rank(&self) -> i64 {
        self.r
    }

    pub fn selfint(&self) -> i64 {
        self.selfint
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn chi(&self) -> i64 {
        self.r + self.s
    }

    /// `(L^2) - 2 r s + 2`.
    pub fn moduli_dim(&self) -> i64 {
        self.selfint - 2 * self.r * self.s + 2
    }

    pub fn is_rigid(&self) -> bool {
        self.moduli_dim() == 0
    }

    /// Moduli of dimension 2, the K3 case when compact.
    pub fn is_k3_moduli(&self) -> bool {
        self.moduli_dim() == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(r: i64, l2: i64, s: i64) -> MukaiVector {
        MukaiVector::new(r, l2, s).unwrap()
    }

    #[test]
    fn moduli_dimensions() {
        assert_eq!(v(2, 8, 2).moduli_dim(), 2);
        assert_eq!(v(2, 12, 3).moduli_dim(), 2);
        assert_eq!(v(2, 20, 5).moduli_dim(), 2);
        assert_eq!(v(2, 6, 2).moduli_dim(), 0);
    }

    #[test]
    fn rigid_and_k3() {
        assert!(v(2, 6, 2).is_rigid());
        assert!(v(2, 8, 2).is_k3_moduli());
        assert!(!v(2, 8, 2).is_rigid());
        let line = v(1, 0, 1);
        assert_eq!(line.moduli_dim(), 0);
        assert!(line.is_rigid());
        assert_eq!(v(2, 20, 5).chi(), 7);
    }

    #[test]
    fn invalid_vectors() {
        assert_eq!(
            MukaiVector::new(-1, 0, 0),
            Err(LatticeError::NegativeRank(-1))
        );
        assert_eq!(
            MukaiVector::new(2, 7, 0),
            Err(LatticeError::OddSelfIntersection(7))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn dimension_is_even(r in 0i64..50, half in -500i64..500, s in -50i64..50) {
            let d = v(r, 2 * half, s).moduli_dim();
            prop_assert_eq!(d % 2, 0);
        }
    }
}
