use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::algebra::{Matrix, Q};
use crate::quadform::diagonalize_symmetric;

type Row = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Vec<Row>,
    det: BigInt,
    label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub rank: usize,
    #[serde(serialize_with = "big_int")]
    pub det: BigInt,
    pub even: bool,
    /// `(positive, negative)`; `None` for a degenerate form.
    pub signature: Option<(usize, usize)>,
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
fn big_int<Ser: serde::Serializer>(x: &BigInt, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    match x.to_i64() {
        Some(v) => ser.serialize_i64(v),
        None => ser.serialize_str(&x.to_string()),
    }
}

/// On-disk form of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub gram: Vec<Vec<i64>>,
}

fn to_rational(gram: &[Row]) -> Matrix<BigRational> {
    let n = gram.len();
    Matrix::from_fn(n, n, Q, |i, j| {
        BigRational::from_integer(gram[i][j].clone())
    })
}

impl IntegralLattice {
    pub fn new(gram: Vec<Row>, label: Option<String>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n)
            || (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i]))
        {
            return Err(LatticeError::NotSymmetric);
        }
        let det = if n == 0 {
            BigInt::one()
        } else {
            to_rational(&gram).det().expect("square").to_integer()
        };
        Ok(IntegralLattice { gram, det, label })
    }

    pub fn from_i64(gram: &[Vec<i64>], label: Option<&str>) -> Result<Self, LatticeError> {
        let g = gram
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::new(g, label.map(str::to_string))
    }

    pub fn from_file(f: &LatticeFile) -> Result<Self, LatticeError> {
        Self::from_i64(&f.gram, f.label.as_deref())
    }

    pub fn to_file(&self) -> Result<LatticeFile, LatticeError> {
        let gram = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        v.to_i64()
                            .ok_or_else(|| LatticeError::Overflow(v.to_string()))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(LatticeFile {
            label: self.label.clone(),
            gram,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i].is_even())
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pairing(x, x)
    }

    pub fn signature(&self) -> Option<(usize, usize)> {
        if self.det.is_zero() {
            return None;
        }
        let (_, d) = diagonalize_symmetric(&to_rational(&self.gram));
        let pos = (0..self.rank())
            .filter(|&i| d[(i, i)].is_positive())
            .count();
        Some((pos, self.rank() - pos))
    }

    pub fn invariants(&self) -> LatticeInvariants {
        LatticeInvariants {
            rank: self.rank(),
            det: self.det.clone(),
            even: self.is_even(),
            signature: self.signature(),
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let gram = (0..a + b)
            .map(|i| {
                (0..a + b)
                    .map(|j| match (i < a, j < a) {
                        (true, true) => self.gram[i][j].clone(),
                        (false, false) => other.gram[i - a][j - a].clone(),
                        _ => BigInt::zero(),
                    })
                    .collect()
            })
            .collect();
        IntegralLattice {
            gram,
            det: &self.det * &other.det,
            label: None,
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    /// Gram matrix of the sublattice spanned by the given rows.
    fn restrict(&self, basis: &[Row]) -> Vec<Row> {
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.pairing(x, y)).collect())
            .collect()
    }

    fn check_vector(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::Dimension {
                rank: self.rank(),
                found: v.len(),
            });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(LatticeError::ZeroClass);
        }
        Ok(())
    }
}

pub fn hyperbolic_plane() -> IntegralLattice {
    IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]], Some("U")).unwrap()
}

/// Bourbaki labelling: the chain 1-3-4-5-6-7-8 with node 2 attached to 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// The negated E8 Cartan matrix.
pub fn e8_negative() -> IntegralLattice {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in &E8_EDGES {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    IntegralLattice::from_i64(&g, Some("E8(-1)")).unwrap()
}

/// `U^3 + E8(-1)^2`, hyperbolic planes first.
pub fn k3_lattice() -> IntegralLattice {
    let u = hyperbolic_plane();
    let e = e8_negative();
    u.direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e)
        .direct_sum(&e)
        .with_label("K3")
}

/// Row-style Hermite normal form: upper triangular with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(mut a: Vec<Row>) -> Vec<Row> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        while let Some(piv) = (r..m)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].abs())
        {
            a.swap(r, piv);
            let mut cleared = true;
            for i in r + 1..m {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    sub_row(&mut a, i, r, &q);
                    cleared &= a[i][c].is_zero();
                }
            }
            if cleared {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            sub_row(&mut a, i, r, &q);
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// `a[i] -= q * a[k]`.
fn sub_row(a: &mut [Row], i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = a[k].clone();
    for (x, y) in a[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// Basis (in Hermite normal form) of `{beta : (beta . alpha) = 0 mod r}`.
pub fn l_zero_sublattice(
    lattice: &IntegralLattice,
    alpha: &[BigInt],
    r: &BigInt,
) -> Result<IntegralLattice, LatticeError> {
    let basis = l_zero_basis(lattice, alpha, r)?;
    IntegralLattice::new(lattice.restrict(&basis), Some("L0".into()))
}

fn l_zero_basis(
    lattice: &IntegralLattice,
    alpha: &[BigInt],
    r: &BigInt,
) -> Result<Vec<Row>, LatticeError> {
    lattice.check_vector(alpha)?;
    if *r < BigInt::from(2) {
        return Err(LatticeError::BadDivisor(r.to_i64().unwrap_or(i64::MIN)));
    }
    let n = lattice.rank();
    // the pairing row w = G alpha, extended by r; its integer kernel projects
    // isomorphically onto L0
    let mut v: Row = (0..n)
        .map(|i| (0..n).map(|j| &lattice.gram[i][j] * &alpha[j]).sum())
        .collect();
    v.push(r.clone());
    let mut u: Vec<Row> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for j in 1..=n {
        if v[j].is_zero() {
            continue;
        }
        let e = v[0].extended_gcd(&v[j]);
        let (a, b) = (&v[0] / &e.gcd, &v[j] / &e.gcd);
        for row in u.iter_mut() {
            let c0 = &e.x * &row[0] + &e.y * &row[j];
            let cj = &b * &row[0] - &a * &row[j];
            row[0] = c0;
            row[j] = cj;
        }
        v[0] = e.gcd;
        v[j] = BigInt::zero();
    }
    let kernel: Vec<Row> = (1..=n)
        .map(|j| (0..n).map(|i| u[i][j].clone()).collect())
        .collect();
    Ok(hermite_normal_form(kernel))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlatticeSpec {
    pub lattice: IntegralLattice,
    pub alpha: Vec<BigInt>,
    pub r: BigInt,
}

impl OverlatticeSpec {
    pub fn new(lattice: IntegralLattice, alpha: Vec<BigInt>, r: i64) -> Result<Self, LatticeError> {
        lattice.check_vector(&alpha)?;
        if r < 2 {
            return Err(LatticeError::BadDivisor(r));
        }
        Ok(OverlatticeSpec {
            lattice,
            alpha,
            r: BigInt::from(r),
        })
    }

    pub fn alpha_squared(&self) -> BigInt {
        self.lattice.norm(&self.alpha)
    }
}

/// The lattice generated by `L0` and `alpha / r`, in a basis of its own.
/// Requires `2 r^2 | (alpha^2)`.
pub fn overlattice(spec: &OverlatticeSpec) -> Result<IntegralLattice, LatticeError> {
    let OverlatticeSpec { lattice, alpha, r } = spec;
    let alpha_sq = spec.alpha_squared();
    let needed = BigInt::from(2) * r * r;
    if !alpha_sq.is_multiple_of(&needed) {
        return Err(LatticeError::DivisibilityViolation {
            alpha_sq: alpha_sq.to_string(),
            needed: needed.to_string(),
        });
    }
    // r * (L0 + Z alpha/r) = r L0 + Z alpha
    let mut gens: Vec<Row> = l_zero_basis(lattice, alpha, r)?
        .into_iter()
        .map(|b| b.into_iter().map(|x| x * r).collect())
        .collect();
    gens.push(alpha.clone());
    let scaled = hermite_normal_form(gens);
    let r_sq = r * r;
    let gram = lattice
        .restrict(&scaled)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    if x.is_multiple_of(&r_sq) {
                        Ok(x / &r_sq)
                    } else {
                        Err(LatticeError::NotIntegral)
                    }
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    IntegralLattice::new(gram, Some("L0 + Z alpha/r".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Row {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Index of the sublattice spanned by `basis` in `Z^n`.
    fn index(basis: &[Row]) -> BigInt {
        let n = basis.len();
        Matrix::from_fn(n, n, Q, |i, j| {
            BigRational::from_integer(basis[i][j].clone())
        })
        .det()
        .unwrap()
        .to_integer()
        .abs()
    }

    fn k3_vector(rng: &mut ChaCha8Rng, range: i64) -> Row {
        (0..22)
            .map(|_| big(rng.random_range(-range..=range)))
            .collect()
    }

    #[test]
    fn small_lattices() {
        let u = hyperbolic_plane().invariants();
        assert_eq!(
            u,
            LatticeInvariants {
                rank: 2,
                det: big(-1),
                even: true,
                signature: Some((1, 1))
            }
        );
        let e = e8_negative().invariants();
        assert_eq!(
            e,
            LatticeInvariants {
                rank: 8,
                det: big(1),
                even: true,
                signature: Some((0, 8))
            }
        );
    }

    #[test]
    fn k3_invariants() {
        let k = k3_lattice();
        assert_eq!(
            k.invariants(),
            LatticeInvariants {
                rank: 22,
                det: big(-1),
                even: true,
                signature: Some((3, 19))
            }
        );
        // cached determinant matches a fresh elimination
        assert_eq!(to_rational(k.gram()).det().unwrap().to_integer(), big(-1));
    }

    #[test]
    fn degenerate_has_no_signature() {
        let l = IntegralLattice::from_i64(&[vec![2, 2], vec![2, 2]], None).unwrap();
        assert_eq!(l.signature(), None);
        assert!(IntegralLattice::from_i64(&[vec![0, 1], vec![2, 0]], None).is_err());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = vec![ints(&[2, 4, 4]), ints(&[-6, 6, 12]), ints(&[10, -4, -16])];
        let h = hermite_normal_form(a.clone());
        for (i, row) in h.iter().enumerate() {
            assert!(row[..i].iter().all(Zero::is_zero));
        }
        // same lattice from a unimodular change of generators
        let mut b = a.clone();
        b.swap(0, 2);
        let first = b[0].clone();
        for (x, y) in b[1].iter_mut().zip(&first) {
            *x = &*x + y * 3;
        }
        assert_eq!(hermite_normal_form(b), h);
        assert_eq!(index(&h), big(2 * 6 * 12));
    }

    #[test]
    fn l_zero_of_hyperbolic_plane() {
        let u = hyperbolic_plane();
        let l0 = l_zero_sublattice(&u, &ints(&[1, 4]), &big(2)).unwrap();
        assert_eq!(*l0.det(), big(-4));
        let basis = l_zero_basis(&u, &ints(&[1, 4]), &big(2)).unwrap();
        assert_eq!(index(&basis), big(2));
    }

    #[test]
    fn l_zero_of_divisible_class_is_everything() {
        let k = k3_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let gamma = k3_vector(&mut rng, 3);
        let alpha: Row = gamma.iter().map(|x| x * 3).collect();
        let basis = l_zero_basis(&k, &alpha, &big(3)).unwrap();
        assert_eq!(index(&basis), big(1));
    }

    #[test]
    fn l_zero_membership_oracle() {
        // every HNF basis vector pairs to 0 mod r, and the index is the size
        // of the image of the pairing mod r
        let k = k3_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let alpha = k3_vector(&mut rng, 4);
            if alpha.iter().all(Zero::is_zero) {
                continue;
            }
            let r = big(rng.random_range(2..=3));
            let basis = l_zero_basis(&k, &alpha, &r).unwrap();
            assert_eq!(basis.len(), 22);
            for b in &basis {
                assert!(k.pairing(b, &alpha).is_multiple_of(&r));
            }
            let w: Row = (0..22)
                .map(|i| k.pairing(&ints(&unit(i)), &alpha))
                .collect();
            let g = w.iter().fold(r.clone(), |acc, x| acc.gcd(x));
            let image = &r / &g;
            assert_eq!(index(&basis), image);
            let l0 = l_zero_sublattice(&k, &alpha, &r).unwrap();
            assert_eq!(l0.det().abs(), &image * &image);
        }
    }

    fn unit(i: usize) -> Vec<i64> {
        let mut v = vec![0; 22];
        v[i] = 1;
        v
    }

    #[test]
    fn overlattice_examples() {
        let k = k3_lattice();
        let mut e_plus_4f = vec![0i64; 22];
        e_plus_4f[0] = 1;
        e_plus_4f[1] = 4;
        let spec = OverlatticeSpec::new(k.clone(), ints(&e_plus_4f), 2).unwrap();
        assert_eq!(spec.alpha_squared(), big(8));
        let m = overlattice(&spec).unwrap();
        assert_eq!((m.rank(), m.is_even(), m.det().abs()), (22, true, big(1)));

        let mut two_e_f = vec![0i64; 22];
        two_e_f[0] = 2;
        two_e_f[1] = 2;
        let m = overlattice(&OverlatticeSpec::new(k.clone(), ints(&two_e_f), 2).unwrap()).unwrap();
        assert_eq!(m.gram(), k.gram());

        let mut e_f = vec![0i64; 22];
        e_f[0] = 1;
        e_f[1] = 1;
        let bad = OverlatticeSpec::new(k.clone(), ints(&e_f), 2).unwrap();
        assert!(matches!(
            overlattice(&bad),
            Err(LatticeError::DivisibilityViolation { .. })
        ));
        assert_eq!(
            OverlatticeSpec::new(k.clone(), ints(&e_f), 1),
            Err(LatticeError::BadDivisor(1))
        );
        assert_eq!(
            OverlatticeSpec::new(k, ints(&[0; 22]), 2),
            Err(LatticeError::ZeroClass)
        );
    }

    #[test]
    fn random_overlattices_are_even_unimodular() {
        let k = k3_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 30 {
            let r = rng.random_range(2..=3i64);
            let alpha = k3_vector(&mut rng, 3);
            let Ok(spec) = OverlatticeSpec::new(k.clone(), alpha, r) else {
                continue;
            };
            let a2 = spec.alpha_squared();
            if !a2.is_multiple_of(&big(2 * r * r)) {
                continue;
            }
            let m = overlattice(&spec).unwrap();
            assert!(m.is_even());
            assert_eq!(m.rank(), 22);
            assert_eq!(m.det().abs(), big(1));
            done += 1;
        }
    }

    #[test]
    fn lattice_file_round_trip() {
        let k = k3_lattice();
        let f = k.to_file().unwrap();
        assert_eq!(f.label.as_deref(), Some("K3"));
        assert_eq!(IntegralLattice::from_file(&f).unwrap(), k);
    }
}
