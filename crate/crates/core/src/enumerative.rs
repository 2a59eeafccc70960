//! Brill-Noether numbers, expected dimensions of rank-2 Brill-Noether
//! loci, Fano genera and linear sections of the homogeneous spaces that
//! realize K3 surfaces and Fano 3-folds.

use serde::Serialize;
use thiserror::Error;

use crate::mukai::MukaiVector;

/// Attached to dimensions computed from determinantal codimension counts.
pub const HEURISTIC_NOTE: &str = "expected (heuristic)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerativeError {
    #[error("genus must be at least {min}, got {g}")]
    Genus { g: i64, min: i64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: i64 },
    #[error("number of hyperplanes {k} outside 0..={max}")]
    Cuts { k: i64, max: i64 },
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
}

fn need_genus(g: i64, min: i64) -> Result<(), EnumerativeError> {
    if g < min {
        return Err(EnumerativeError::Genus { g, min });
    }
    Ok(())
}

fn non_negative(name: &'static str, value: i64) -> Result<(), EnumerativeError> {
    if value < 0 {
        return Err(EnumerativeError::Negative { name, value });
    }
    Ok(())
}

/// `g - (r + 1)(g - d + r)`; negative means the locus is expected empty.
pub fn brill_noether_number(g: i64, r: i64, d: i64) -> Result<i64, EnumerativeError> {
    need_genus(g, 0)?;
    non_negative("r", r)?;
    Ok(g - (r + 1) * (g - d + r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocusType {
    /// `h^0(F) >= n` with canonical determinant: symmetric codimension.
    III,
    /// `dim Hom(G, F) >= n`: antisymmetric codimension.
    II,
}

/// `(3g - 3) - n(n+1)/2` for type III, `(3g - 3) - n(n-1)/2` for type II.
pub fn expected_dim(kind: LocusType, g: i64, n: i64) -> Result<i64, EnumerativeError> {
    need_genus(g, 2)?;
    non_negative("n", n)?;
    let codim = match kind {
        LocusType::III => n * (n + 1) / 2,
        LocusType::II => n * (n - 1) / 2,
    };
    Ok(3 * g - 3 - codim)
}

pub fn type_iii_expected_dim(g: i64, n: i64) -> Result<i64, EnumerativeError> {
    expected_dim(LocusType::III, g, n)
}

pub fn type_ii_expected_dim(g: i64, n: i64) -> Result<i64, EnumerativeError> {
    expected_dim(LocusType::II, g, n)
}

/// `chi = r + s`: restricting a bundle with this Mukai vector to a curve
/// section gives at least this many sections.
pub fn restriction_section_bound(v: &MukaiVector) -> i64 {
    v.chi()
}

pub fn fano_genus_allowed(g: i64) -> Result<bool, EnumerativeError> {
    need_genus(g, 2)?;
    Ok((2..=10).contains(&g) || g == 12)
}

/// `(-K)^3 = 2g - 2`.
pub fn fano_degree(g: i64) -> Result<i64, EnumerativeError> {
    need_genus(g, 2)?;
    Ok(2 * g - 2)
}

/// `(dim P_g, dim M_g) = (g + 19, 3g - 3)`.
pub fn pairs_moduli_dims(g: i64) -> Result<(i64, i64), EnumerativeError> {
    need_genus(g, 2)?;
    Ok((g + 19, 3 * g - 3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneousSpace {
    pub key: &'static str,
    pub name: &'static str,
    pub dim: i64,
    pub degree: i64,
    /// `-K = index * H`.
    pub index: i64,
    /// Dimension of the ambient projective space.
    pub ambient: i64,
}

pub const GRASSMANNIAN_2_5: HomogeneousSpace = HomogeneousSpace {
    key: "grassmannian25",
    name: "G(2,5)",
    dim: 6,
    degree: 5,
    index: 5,
    ambient: 9,
};

pub const SPINOR_10: HomogeneousSpace = HomogeneousSpace {
    key: "spinor10",
    name: "SO(10)/U(5)",
    dim: 10,
    degree: 12,
    index: 8,
    ambient: 15,
};

pub const LAGRANGIAN_6: HomogeneousSpace = HomogeneousSpace {
    key: "lagrangian6",
    name: "Sp(6)/U(3)",
    dim: 6,
    degree: 16,
    index: 4,
    ambient: 13,
};

pub const HOMOGENEOUS_SPACES: [HomogeneousSpace; 3] = [GRASSMANNIAN_2_5, SPINOR_10, LAGRANGIAN_6];

pub fn homogeneous_space(key: &str) -> Result<HomogeneousSpace, EnumerativeError> {
    HOMOGENEOUS_SPACES
        .iter()
        .find(|x| x.key == key)
        .copied()
        .ok_or_else(|| EnumerativeError::UnknownVariety(key.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionClass {
    #[serde(rename = "fano-threefold")]
    Fano3Fold,
    K3Surface,
    GenusOneCurve,
    CanonicalCurve,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionInvariants {
    pub dim: i64,
    pub degree: i64,
    pub index: i64,
    pub classification: SectionClass,
    /// Fano 3-folds: `(-K)^3 = 2g - 2`; K3 surfaces: `H^2 = 2g - 2`;
    /// canonical curves: `deg = 2g - 2`.
    pub genus: Option<i64>,
    /// `(-K)^3 = index^3 * degree` for Fano 3-folds.
    pub anticanonical_degree: Option<i64>,
}

/// Invariants of a transversal section by `k` hyperplanes.
pub fn linear_section_invariants(
    x: &HomogeneousSpace,
    k: i64,
) -> Result<SectionInvariants, EnumerativeError> {
    if !(0..x.dim).contains(&k) {
        return Err(EnumerativeError::Cuts { k, max: x.dim - 1 });
    }
    let dim = x.dim - k;
    let index = x.index - k;
    let degree = x.degree;
    let (classification, anticanonical_degree) = match (dim, index) {
        (3, i) if i >= 1 => (SectionClass::Fano3Fold, Some(i * i * i * degree)),
        (2, 0) => (SectionClass::K3Surface, None),
        (1, 0) => (SectionClass::GenusOneCurve, None),
        (1, -1) => (SectionClass::CanonicalCurve, None),
        _ => (SectionClass::Other, None),
    };
    let genus = match classification {
        SectionClass::Fano3Fold => anticanonical_degree.map(|d| d / 2 + 1),
        SectionClass::K3Surface | SectionClass::CanonicalCurve => Some(degree / 2 + 1),
        SectionClass::GenusOneCurve => Some(1),
        _ => None,
    };
    Ok(SectionInvariants {
        dim,
        degree,
        index,
        classification,
        genus,
        anticanonical_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn brill_noether_examples() {
        assert_eq!(brill_noether_number(2, 0, 1), Ok(1));
        assert_eq!(brill_noether_number(4, 1, 3), Ok(0));
        assert_eq!(brill_noether_number(11, 1, 6), Ok(-1));
        assert!(brill_noether_number(-1, 0, 0).is_err());
    }

    #[test]
    fn non_abelian_dimensions() {
        assert_eq!(type_iii_expected_dim(11, 7), Ok(2));
        assert_eq!(type_iii_expected_dim(7, 5), Ok(3));
        assert_eq!(type_ii_expected_dim(3, 3), Ok(3));
        for g in 2..20 {
            assert_eq!(type_iii_expected_dim(g, 0), Ok(3 * g - 3));
            assert_eq!(type_ii_expected_dim(g, 0), Ok(3 * g - 3));
            assert_eq!(type_ii_expected_dim(g, 1), Ok(3 * g - 3));
        }
        assert!(type_iii_expected_dim(1, 0).is_err());
        assert!(type_ii_expected_dim(5, -1).is_err());
    }

    #[test]
    fn restriction_bounds() {
        let v = |r, l, s| MukaiVector::new(r, l, s).unwrap();
        assert_eq!(restriction_section_bound(&v(2, 20, 5)), 7);
        assert_eq!(restriction_section_bound(&v(2, 8, 2)), 4);
        assert_eq!(restriction_section_bound(&v(2, 12, 3)), 5);
    }

    #[test]
    fn k3_brill_noether_triangle() {
        // a K3 moduli space of sheaves restricts to a type III locus of the
        // same dimension on the curve section of genus (L^2)/2 + 1
        for (r, l2, s) in [(2, 8, 2), (2, 20, 5)] {
            let v = MukaiVector::new(r, l2, s).unwrap();
            assert_eq!(v.moduli_dim(), 2);
            let g = l2 / 2 + 1;
            assert_eq!(
                type_iii_expected_dim(g, restriction_section_bound(&v)),
                Ok(2)
            );
        }
    }

    #[test]
    fn fano_genera() {
        let allowed: Vec<i64> = (2..=20)
            .filter(|&g| fano_genus_allowed(g).unwrap())
            .collect();
        assert_eq!(allowed, vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 12]);
        assert_eq!(fano_genus_allowed(11), Ok(false));
        assert_eq!(fano_degree(7), Ok(12));
        assert!(fano_degree(1).is_err());
    }

    #[test]
    fn pair_dimensions() {
        assert_eq!(pairs_moduli_dims(10), Ok((29, 27)));
        assert_eq!(pairs_moduli_dims(11), Ok((30, 30)));
        assert_eq!(pairs_moduli_dims(2), Ok((21, 3)));
        assert!(pairs_moduli_dims(0).is_err());
    }

    #[test]
    fn linear_sections() {
        let s = linear_section_invariants(&SPINOR_10, 7).unwrap();
        assert_eq!(
            (s.dim, s.classification, s.genus),
            (3, SectionClass::Fano3Fold, Some(7))
        );
        let s = linear_section_invariants(&SPINOR_10, 8).unwrap();
        assert_eq!(
            (s.dim, s.degree, s.classification),
            (2, 12, SectionClass::K3Surface)
        );
        assert_eq!(s.genus, Some(7));
        let s = linear_section_invariants(&GRASSMANNIAN_2_5, 5).unwrap();
        assert_eq!(
            (s.degree, s.classification, s.genus),
            (5, SectionClass::GenusOneCurve, Some(1))
        );
        let s = linear_section_invariants(&LAGRANGIAN_6, 3).unwrap();
        assert_eq!(
            (s.degree, s.classification, s.genus),
            (16, SectionClass::Fano3Fold, Some(9))
        );
        let s = linear_section_invariants(&SPINOR_10, 9).unwrap();
        assert_eq!(
            (s.classification, s.genus),
            (SectionClass::CanonicalCurve, Some(7))
        );
        assert!(linear_section_invariants(&SPINOR_10, 10).is_err());
        assert!(linear_section_invariants(&SPINOR_10, -1).is_err());
    }

    #[test]
    fn fano_sections_satisfy_degree_genus_relation() {
        for x in &HOMOGENEOUS_SPACES {
            for k in 0..x.dim {
                let s = linear_section_invariants(x, k).unwrap();
                if s.classification == SectionClass::Fano3Fold {
                    assert_eq!(
                        s.anticanonical_degree,
                        Some(2 * s.genus.unwrap() - 2),
                        "{x:?} {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_lookup() {
        assert_eq!(homogeneous_space("spinor10"), Ok(SPINOR_10));
        assert!(homogeneous_space("G(3,6)").is_err());
    }

    proptest! {
        #[test]
        fn fano_degree_even_positive(g in 2i64..10_000) {
            let d = fano_degree(g).unwrap();
            prop_assert!(d > 0 && d % 2 == 0);
        }

        #[test]
        fn expected_dims_decrease(g in 2i64..200, n in 1i64..60) {
            prop_assert!(type_iii_expected_dim(g, n + 1).unwrap() < type_iii_expected_dim(g, n).unwrap());
            if n >= 2 {
                prop_assert!(type_ii_expected_dim(g, n + 1).unwrap() < type_ii_expected_dim(g, n).unwrap());
            }
        }
    }
}
