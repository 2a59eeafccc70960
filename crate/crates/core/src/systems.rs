//! Pencils and nets of quadrics: discriminants, the double covers they
//! define, smoothness probes and point counts over small prime fields.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    reduce, AlgebraError, BinaryQuartic, Fp, Matrix, MultiPoly, OddPrime, PolyMatrix, Rational,
    Scalar,
};
use crate::quadform::{QuadFormError, QuadraticForm};

/// Primes used when no probe primes are given.
pub const DEFAULT_PROBE_PRIMES: [u32; 3] = [7, 11, 13];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("expected {expected} quadrics in {nvars} variables")]
    Shape { expected: usize, nvars: usize },
    #[error("quadrics are linearly dependent")]
    Dependent,
    #[error("discriminant vanishes identically")]
    IdenticallyZero,
    #[error("branch quartic has a repeated root")]
    DegenerateBranch,
    #[error("bad reduction at p = {0}")]
    BadReduction(u32),
    #[error("not a plane sextic")]
    NotSextic,
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A linear system of quadrics spanned by independent forms.
pub trait QuadricSystem<S: Scalar> {
    fn forms(&self) -> &[QuadraticForm<S>];

    fn nvars(&self) -> usize {
        self.forms()[0].dim()
    }

    fn field(&self) -> S::Field {
        self.forms()[0].field()
    }

    /// `sum_i lambda_i q_i`.
    fn member(&self, lambda: &[S]) -> QuadraticForm<S> {
        let field = self.field();
        let n = self.nvars();
        let gram = self
            .forms()
            .iter()
            .zip(lambda)
            .fold(Matrix::zeros(n, n, field), |acc, (q, l)| {
                acc.checked_add(&q.gram().scale(l)).unwrap()
            });
        QuadraticForm::new(gram).unwrap()
    }

    /// `det(sum_i lambda_i G_i)` as a form in the parameters.
    fn discriminant_poly(&self) -> MultiPoly<S> {
        let grams: Vec<Matrix<S>> = self.forms().iter().map(|q| q.gram().clone()).collect();
        PolyMatrix::linear_combination(&grams)
            .and_then(|m| m.det())
            .expect("square Gram matrices")
    }

    /// The unique `b` with `q = sum_i b_i q_i`, if `q` lies in the span.
    fn span_coordinates(&self, q: &QuadraticForm<S>) -> Option<Vec<S>> {
        let cols: Vec<Vec<S>> = self
            .forms()
            .iter()
            .map(|f| upper_entries(f.gram()))
            .collect();
        let target = upper_entries(q.gram());
        let m = Matrix::from_fn(target.len(), cols.len(), self.field(), |i, j| {
            cols[j][i].clone()
        });
        m.solve(&target)
    }
}

fn upper_entries<S: Scalar>(g: &Matrix<S>) -> Vec<S> {
    let n = g.rows();
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| g[(i, j)].clone())
        .collect()
}

fn check_independent<S: Scalar>(
    forms: &[QuadraticForm<S>],
    nvars: usize,
) -> Result<(), SystemError> {
    if forms.iter().any(|q| q.dim() != nvars) {
        return Err(SystemError::Shape {
            expected: forms.len(),
            nvars,
        });
    }
    let field = forms[0].field();
    let rows: Vec<Vec<S>> = forms.iter().map(|q| upper_entries(q.gram())).collect();
    if Matrix::from_rows(rows, field)?.rank() < forms.len() {
        return Err(SystemError::Dependent);
    }
    Ok(())
}

fn reduce_forms(
    forms: &[QuadraticForm<Rational>],
    p: OddPrime,
) -> Result<Vec<QuadraticForm<Fp>>, SystemError> {
    forms
        .iter()
        .map(|q| q.reduce(p).map_err(|_| SystemError::BadReduction(p.get())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilOfQuadrics<S: Scalar> {
    forms: [QuadraticForm<S>; 2],
}

impl<S: Scalar> QuadricSystem<S> for PencilOfQuadrics<S> {
    fn forms(&self) -> &[QuadraticForm<S>] {
        &self.forms
    }
}

impl<S: Scalar> PencilOfQuadrics<S> {
    pub fn new(q1: QuadraticForm<S>, q2: QuadraticForm<S>) -> Result<Self, SystemError> {
        let forms = [q1, q2];
        check_independent(&forms, 4)?;
        Ok(PencilOfQuadrics { forms })
    }

    /// `sum x_i^2` and `sum a_i x_i^2`.
    pub fn diagonal(a: &[S; 4]) -> Result<Self, SystemError> {
        let field = a[0].field();
        let ones = vec![S::one(field); 4];
        Self::new(
            QuadraticForm::diagonal(&ones, field)?,
            QuadraticForm::diagonal(a, field)?,
        )
    }

    /// `det(lambda_1 G_1 + lambda_2 G_2)`.
    pub fn discriminant(&self) -> Result<BinaryQuartic<S>, SystemError> {
        let d = self.discriminant_poly();
        if d.is_zero() {
            return Err(SystemError::IdenticallyZero);
        }
        Ok(BinaryQuartic::from_poly(&d)?)
    }

    /// The double cover of the pencil line branched at its singular members.
    pub fn double_cover(&self) -> Result<DoubleCoverDescriptor<S>, SystemError> {
        let f = self.discriminant()?;
        let verdict = if f.is_squarefree() {
            Smoothness::Smooth
        } else {
            Smoothness::Singular { witnesses: vec![] }
        };
        Ok(DoubleCoverDescriptor {
            base_dim: 1,
            branch: f.to_poly(),
            verdict,
        })
    }

    /// j-invariant of the branch quartic.
    pub fn j_invariant(&self) -> Result<S, SystemError> {
        self.discriminant()?
            .j_invariant()
            .map_err(|_| SystemError::DegenerateBranch)
    }
}

impl PencilOfQuadrics<Rational> {
    pub fn from_diagonal_ints(a: [i64; 4]) -> Result<Self, SystemError> {
        Self::diagonal(&a.map(crate::algebra::int))
    }

    /// Reduction mod p; fails when p divides a denominator or the reduced
    /// forms become dependent.
    pub fn reduce(&self, p: OddPrime) -> Result<PencilOfQuadrics<Fp>, SystemError> {
        let mut forms = reduce_forms(&self.forms, p)?.into_iter();
        let (a, b) = (forms.next().unwrap(), forms.next().unwrap());
        PencilOfQuadrics::new(a, b).map_err(|_| SystemError::BadReduction(p.get()))
    }

    /// Reduction with nonzero, squarefree discriminant mod p.
    pub fn reduce_good(&self, p: OddPrime) -> Result<PencilOfQuadrics<Fp>, SystemError> {
        let r = self.reduce(p)?;
        match r.discriminant() {
            Ok(f) if !f.invariants().disc.is_zero() => Ok(r),
            _ => Err(SystemError::BadReduction(p.get())),
        }
    }

    /// `#{x in P^3(F_p) : q_1(x) = q_2(x) = 0}`.
    pub fn count_points(&self, p: OddPrime) -> Result<u64, SystemError> {
        let r = self.reduce_good(p)?;
        let [q1, q2] = &r.forms;
        Ok(projective_points(4, p)
            .filter(|x| q1.eval(x).is_zero() && q2.eval(x).is_zero())
            .count() as u64)
    }

    /// Point count of the intersection next to the count `N` of the
    /// hyperelliptic model `y^2 = disc`; the two agree up to quadratic twist.
    pub fn twist_check(&self, p: OddPrime) -> Result<TwistCheck, SystemError> {
        let pencil = self.count_points(p)?;
        let hyperelliptic = count_hyperelliptic(&self.reduce_good(p)?.discriminant()?)?;
        let twist = 2 * p.get() as u64 + 2 - hyperelliptic;
        Ok(TwistCheck {
            p: p.get(),
            pencil,
            hyperelliptic,
            matches: pencil == hyperelliptic || pencil == twist,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCheck {
    pub p: u32,
    pub pencil: u64,
    pub hyperelliptic: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetOfQuadrics<S: Scalar> {
    forms: [QuadraticForm<S>; 3],
}

impl<S: Scalar> QuadricSystem<S> for NetOfQuadrics<S> {
    fn forms(&self) -> &[QuadraticForm<S>] {
        &self.forms
    }
}

impl<S: Scalar> NetOfQuadrics<S> {
    pub fn new(
        q1: QuadraticForm<S>,
        q2: QuadraticForm<S>,
        q3: QuadraticForm<S>,
    ) -> Result<Self, SystemError> {
        let forms = [q1, q2, q3];
        check_independent(&forms, 6)?;
        Ok(NetOfQuadrics { forms })
    }

    /// `sum x_i^2`, `sum a_i x_i^2`, `sum b_i x_i^2`.
    pub fn diagonal(a: &[S; 6], b: &[S; 6]) -> Result<Self, SystemError> {
        let field = a[0].field();
        let ones = vec![S::one(field); 6];
        Self::new(
            QuadraticForm::diagonal(&ones, field)?,
            QuadraticForm::diagonal(a, field)?,
            QuadraticForm::diagonal(b, field)?,
        )
    }

    /// `det(lambda_1 G_1 + lambda_2 G_2 + lambda_3 G_3)`, a plane sextic
    /// unless it vanishes identically.
    pub fn discriminant(&self) -> MultiPoly<S> {
        self.discriminant_poly()
    }
}

impl NetOfQuadrics<Rational> {
    pub fn reduce(&self, p: OddPrime) -> Result<NetOfQuadrics<Fp>, SystemError> {
        let mut forms = reduce_forms(&self.forms, p)?.into_iter();
        let (a, b, c) = (
            forms.next().unwrap(),
            forms.next().unwrap(),
            forms.next().unwrap(),
        );
        NetOfQuadrics::new(a, b, c).map_err(|_| SystemError::BadReduction(p.get()))
    }

    /// The double cover of the net plane branched along the discriminant
    /// sextic, with a smoothness verdict from the finite-field probe.
    pub fn double_cover(
        &self,
        primes: &[OddPrime],
    ) -> Result<DoubleCoverDescriptor<Rational>, SystemError> {
        let f = self.discriminant();
        if f.is_zero() {
            return Err(SystemError::IdenticallyZero);
        }
        let verdict = sextic_smoothness_probe(&f, primes)?;
        Ok(DoubleCoverDescriptor {
            base_dim: 2,
            branch: f,
            verdict,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularWitness {
    pub p: u32,
    pub point: Vec<u32>,
}

/// Smoothness of a branch curve. Quartics are decided exactly; sextics are
/// probed over finite fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Smoothness {
    Smooth,
    /// Singular over every probed prime (or exactly, with no witnesses).
    Singular {
        witnesses: Vec<SingularWitness>,
    },
    /// No singular point over any probed prime.
    ProbablySmooth {
        primes: Vec<u32>,
    },
    /// Singular points at some primes only, which bad reduction can explain.
    Unknown {
        smooth_at: Vec<u32>,
        singular_at: Vec<SingularWitness>,
    },
}

impl Smoothness {
    pub fn is_singular(&self) -> bool {
        matches!(self, Smoothness::Singular { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverDescriptor<S: Scalar> {
    /// 1 for a pencil line, 2 for a net plane.
    pub base_dim: usize,
    /// Quartic binary form or plane sextic.
    pub branch: MultiPoly<S>,
    pub verdict: Smoothness,
}

impl<S: Scalar> DoubleCoverDescriptor<S> {
    pub fn equation(&self) -> String {
        format!("y^2 = {}", self.branch)
    }

    pub fn branch_degree(&self) -> u32 {
        self.branch.degree().unwrap_or(0)
    }
}

/// Searches `P^2(F_p)` for common zeros of a plane sextic and its partials.
/// A prime is reported singular only with an explicit witness; the overall
/// verdict is `Singular` when every probed prime gives one.
pub fn sextic_smoothness_probe(
    f: &MultiPoly<Rational>,
    primes: &[OddPrime],
) -> Result<Smoothness, SystemError> {
    if f.nvars() != 3 || !f.is_homogeneous() || f.degree() != Some(6) {
        return Err(SystemError::NotSextic);
    }
    let mut smooth_at = Vec::new();
    let mut singular_at = Vec::new();
    for &p in primes {
        let reduced = f.try_map_coeffs(p, |c| reduce(c, p))?;
        if reduced.is_zero() {
            return Err(SystemError::BadReduction(p.get()));
        }
        let partials: Vec<MultiPoly<Fp>> = (0..3).map(|i| reduced.derivative(i)).collect();
        let witness = projective_points(3, p).find(|x| {
            reduced.eval(x).unwrap().is_zero()
                && partials.iter().all(|d| d.eval(x).unwrap().is_zero())
        });
        match witness {
            Some(x) => singular_at.push(SingularWitness {
                p: p.get(),
                point: x.iter().map(|c| c.value()).collect(),
            }),
            None => smooth_at.push(p.get()),
        }
    }
    Ok(if singular_at.is_empty() {
        Smoothness::ProbablySmooth { primes: smooth_at }
    } else if smooth_at.is_empty() {
        Smoothness::Singular {
            witnesses: singular_at,
        }
    } else {
        Smoothness::Unknown {
            smooth_at,
            singular_at,
        }
    })
}

/// Points of `P^{n-1}(F_p)`, first nonzero coordinate normalized to 1.
pub fn projective_points(n: usize, p: OddPrime) -> impl Iterator<Item = Vec<Fp>> {
    let q = p.get() as u64;
    (0..n).flat_map(move |lead| {
        let free = n - 1 - lead;
        (0..q.pow(free as u32)).map(move |mut idx| {
            let mut x = vec![Fp::new(p, 0); n];
            x[lead] = Fp::new(p, 1);
            for c in x.iter_mut().skip(lead + 1) {
                *c = Fp::new(p, (idx % q) as i64);
                idx /= q;
            }
            x
        })
    })
}

/// Points on the smooth model of `y^2 = f(t, 1)`: affine solutions plus
/// 2, 1 or 0 points at infinity as the `t^4` coefficient is a nonzero
/// square, zero, or a non-square.
pub fn count_hyperelliptic(f: &BinaryQuartic<Fp>) -> Result<u64, SystemError> {
    let p = f.field();
    if f.invariants().disc.is_zero() {
        return Err(SystemError::BadReduction(p.get()));
    }
    let one = Fp::new(p, 1);
    let affine: u64 = p
        .elements()
        .map(|t| (1 + f.eval(&t, &one).legendre() as i64) as u64)
        .sum();
    let infinity = match f.coeffs()[0].legendre() {
        1 => 2,
        0 => 1,
        _ => 0,
    };
    Ok(affine + infinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Monomial, Q};
    use crate::quadform::Isometry;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prime(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    fn random_gram(rng: &mut ChaCha8Rng, n: usize) -> QuadraticForm<Rational> {
        let mut g = Matrix::zeros(n, n, Q);
        for i in 0..n {
            for j in i..n {
                let v = int(rng.random_range(-3..=3));
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        QuadraticForm::new(g).unwrap()
    }

    fn random_pencil(rng: &mut ChaCha8Rng) -> PencilOfQuadrics<Rational> {
        loop {
            if let Ok(p) = PencilOfQuadrics::new(random_gram(rng, 4), random_gram(rng, 4)) {
                return p;
            }
        }
    }

    fn random_net(rng: &mut ChaCha8Rng) -> NetOfQuadrics<Rational> {
        loop {
            if let Ok(n) = NetOfQuadrics::new(
                random_gram(rng, 6),
                random_gram(rng, 6),
                random_gram(rng, 6),
            ) {
                return n;
            }
        }
    }

    /// Leibniz expansion over all permutations.
    fn leibniz_det(m: &PolyMatrix<Rational>) -> MultiPoly<Rational> {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], true)];
            }
            let mut out = Vec::new();
            for (p, even) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // inserting at pos moves n-1 past (n-1-pos) elements
                    let flip = (n - 1 - pos) % 2 == 1;
                    out.push((q, even != flip));
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = MultiPoly::zero(m.nvars(), Q);
        for (p, even) in perms(n) {
            let mut t = MultiPoly::one(m.nvars(), Q);
            for (i, &j) in p.iter().enumerate() {
                t = &t * &m[(i, j)];
            }
            acc = if even { &acc + &t } else { &acc - &t };
        }
        acc
    }

    fn product_of_lines(rows: &[Vec<Rational>]) -> MultiPoly<Rational> {
        rows.iter()
            .fold(MultiPoly::one(rows[0].len(), Q), |acc, r| {
                &acc * &MultiPoly::linear(r, Q)
            })
    }

    #[test]
    fn diagonal_pencil_discriminant() {
        let pencil = PencilOfQuadrics::from_diagonal_ints([0, 1, 2, 3]).unwrap();
        let lines: Vec<Vec<Rational>> = (0..4).map(|a| vec![int(1), int(a)]).collect();
        assert_eq!(
            pencil.discriminant().unwrap().to_poly(),
            product_of_lines(&lines)
        );
        let cover = pencil.double_cover().unwrap();
        assert_eq!(cover.verdict, Smoothness::Smooth);
        assert_eq!(cover.branch_degree(), 4);
    }

    #[test]
    fn repeated_entry_gives_singular_cover() {
        let pencil = PencilOfQuadrics::from_diagonal_ints([0, 0, 1, 2]).unwrap();
        let f = pencil.discriminant().unwrap();
        assert!(!f.is_squarefree());
        assert_eq!(f.to_poly().coeff(&[4, 0]), int(1));
        assert!(pencil.double_cover().unwrap().verdict.is_singular());
        assert_eq!(pencil.j_invariant(), Err(SystemError::DegenerateBranch));
    }

    #[test]
    fn dependent_and_degenerate_systems_rejected() {
        let q = QuadraticForm::diagonal(&[int(1), int(2), int(3), int(4)], Q).unwrap();
        assert_eq!(
            PencilOfQuadrics::new(q.clone(), q.scale(&int(3))),
            Err(SystemError::Dependent)
        );
        // two forms sharing a kernel vector: every member is singular
        let a = QuadraticForm::diagonal(&[int(0), int(1), int(2), int(3)], Q).unwrap();
        let b = QuadraticForm::diagonal(&[int(0), int(3), int(1), int(1)], Q).unwrap();
        let pencil = PencilOfQuadrics::new(a, b).unwrap();
        assert_eq!(pencil.discriminant(), Err(SystemError::IdenticallyZero));
        assert_eq!(pencil.double_cover(), Err(SystemError::IdenticallyZero));
    }

    #[test]
    fn j_invariant_examples() {
        // disc = (l1^2 - l2^2)(l1^2 - 4 l2^2), branch points -1, 1, -2, 2
        let pencil = PencilOfQuadrics::from_diagonal_ints([1, -1, 2, -2]).unwrap();
        let l = crate::algebra::rat(1, 9);
        let one = int(1);
        let expected = int(256) * (l.clone() * l.clone() - l.clone() + one.clone()).pow(3)
            / (l.clone() * l.clone() * (l.clone() - one.clone()) * (l - one));
        assert_eq!(pencil.j_invariant().unwrap(), expected);
        // branch points 0, infinity, 1, -1
        let harmonic = PencilOfQuadrics::new(
            QuadraticForm::diagonal(&[int(0), int(1), int(1), int(1)], Q).unwrap(),
            QuadraticForm::diagonal(&[int(1), int(0), int(1), int(-1)], Q).unwrap(),
        )
        .unwrap();
        assert_eq!(harmonic.j_invariant().unwrap(), int(1728));
    }

    #[test]
    fn dense_pencils_match_leibniz_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let p = random_pencil(&mut rng);
            let grams: Vec<Matrix<Rational>> = p.forms().iter().map(|q| q.gram().clone()).collect();
            let m = PolyMatrix::linear_combination(&grams).unwrap();
            assert_eq!(p.discriminant_poly(), leibniz_det(&m));
        }
    }

    #[test]
    fn base_change_substitutes_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let pencil = random_pencil(&mut rng);
            let r: [i64; 4] = std::array::from_fn(|_| rng.random_range(-3..=3));
            if r[0] * r[3] - r[1] * r[2] == 0 {
                continue;
            }
            let [q1, q2] = &pencil.forms;
            let n1 = q1
                .scale(&int(r[0]))
                .checked_add(&q2.scale(&int(r[1])))
                .unwrap();
            let n2 = q1
                .scale(&int(r[2]))
                .checked_add(&q2.scale(&int(r[3])))
                .unwrap();
            let changed = PencilOfQuadrics::new(n1, n2).unwrap();
            // l1 (r0 q1 + r1 q2) + l2 (r2 q1 + r3 q2) = (r0 l1 + r2 l2) q1 + (r1 l1 + r3 l2) q2
            let images = [
                MultiPoly::linear(&[int(r[0]), int(r[2])], Q),
                MultiPoly::linear(&[int(r[1]), int(r[3])], Q),
            ];
            assert_eq!(
                changed.discriminant_poly(),
                pencil.discriminant_poly().substitute(&images).unwrap()
            );
        }
    }

    #[test]
    fn coordinate_change_scales_by_det_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut done = 0;
        while done < 50 {
            let pencil = random_pencil(&mut rng);
            let m = Matrix::from_fn(4, 4, Q, |_, _| int(rng.random_range(-2..=2)));
            let Ok(iso) = Isometry::new(m.clone()) else {
                continue;
            };
            let moved = PencilOfQuadrics::new(
                pencil.forms[0].transform(&iso),
                pencil.forms[1].transform(&iso),
            )
            .unwrap();
            let d = m.det().unwrap();
            assert_eq!(
                moved.discriminant_poly(),
                pencil.discriminant_poly().scale(&(d.clone() * d))
            );
            done += 1;
        }
    }

    #[test]
    fn diagonal_j_is_affine_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut done = 0;
        while done < 50 {
            let a: [i64; 4] = std::array::from_fn(|_| rng.random_range(-6..=6));
            let Ok(j) = PencilOfQuadrics::from_diagonal_ints(a).and_then(|p| p.j_invariant())
            else {
                continue;
            };
            let (u, v) = (
                rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 },
                rng.random_range(-5..=5),
            );
            let moved = PencilOfQuadrics::from_diagonal_ints(a.map(|x| u * x + v)).unwrap();
            assert_eq!(moved.j_invariant().unwrap(), j);
            done += 1;
        }
    }

    #[test]
    fn point_count_examples() {
        let p5 = prime(5);
        let pencil = PencilOfQuadrics::from_diagonal_ints([0, 1, 2, 3]).unwrap();
        assert_eq!(projective_points(4, p5).count(), 156);
        // brute force over all of F_5^4 \ 0, divided by scalars
        let [q1, q2] = &pencil.reduce(p5).unwrap().forms;
        let mut affine = 0;
        for idx in 1..625i64 {
            let x: Vec<Fp> = (0..4)
                .map(|k| Fp::new(p5, (idx / 5i64.pow(k)) % 5))
                .collect();
            if q1.eval(&x).is_zero() && q2.eval(&x).is_zero() {
                affine += 1;
            }
        }
        let n_pencil = pencil.count_points(p5).unwrap();
        assert_eq!(n_pencil, affine / 4);

        // y^2 = t (t+1) (t+2) (t+3) over F_5
        let f = pencil.reduce(p5).unwrap().discriminant().unwrap();
        let mut sweep = 0;
        for t in 0..5 {
            let v = (t * (t + 1) * (t + 2) * (t + 3)) % 5;
            sweep += (0..5).filter(|y| (y * y) % 5 == v).count() as u64;
        }
        // leading coefficient 1 is a square: two points at infinity
        let n_hyp = count_hyperelliptic(&f).unwrap();
        assert_eq!(n_hyp, sweep + 2);
        assert!(n_pencil == n_hyp || n_pencil == 12 - n_hyp);
    }

    #[test]
    fn bad_reduction_is_reported() {
        let pencil = PencilOfQuadrics::from_diagonal_ints([0, 1, 2, 3]).unwrap();
        assert_eq!(
            pencil.count_points(prime(3)),
            Err(SystemError::BadReduction(3))
        );
        let halves = PencilOfQuadrics::diagonal(&[
            Rational::new(1.into(), 7.into()),
            int(1),
            int(2),
            int(3),
        ])
        .unwrap();
        assert_eq!(
            halves.count_points(prime(7)),
            Err(SystemError::BadReduction(7))
        );
    }

    #[test]
    fn twist_dichotomy_for_diagonal_pencils() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10 {
            let a: [i64; 4] = std::array::from_fn(|_| rng.random_range(-20..=20));
            let Ok(pencil) = PencilOfQuadrics::from_diagonal_ints(a) else {
                continue;
            };
            for p in [3, 5, 7, 11, 13] {
                match pencil.twist_check(prime(p)) {
                    Ok(t) => assert!(t.matches, "{a:?} {t:?}"),
                    Err(SystemError::BadReduction(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn diagonal_net_is_six_lines() {
        let a = [0, 1, 2, 3, 4, 5].map(int);
        let b = [0, 1, 4, 9, 16, 25].map(int);
        let net = NetOfQuadrics::diagonal(&a, &b).unwrap();
        let lines: Vec<Vec<Rational>> = (0..6)
            .map(|i| vec![int(1), a[i].clone(), b[i].clone()])
            .collect();
        assert_eq!(net.discriminant(), product_of_lines(&lines));
        let primes = DEFAULT_PROBE_PRIMES.map(|p| prime(p as u64));
        let cover = net.double_cover(&primes).unwrap();
        assert!(cover.verdict.is_singular());
        assert_eq!(cover.branch_degree(), 6);
        // witnesses lie on two of the lines
        let Smoothness::Singular { witnesses } = cover.verdict else {
            unreachable!()
        };
        for w in witnesses {
            let p = prime(w.p as u64);
            let x: Vec<Fp> = w.point.iter().map(|&c| Fp::new(p, c as i64)).collect();
            let on = lines
                .iter()
                .filter(|l| {
                    let l: Vec<Fp> = l.iter().map(|c| reduce(c, p).unwrap()).collect();
                    (l[0] * x[0] + l[1] * x[1] + l[2] * x[2]).is_zero()
                })
                .count();
            assert!(on >= 2);
        }
    }

    #[test]
    fn dependent_net_rejected() {
        let q1 = QuadraticForm::diagonal(&[1, 1, 1, 1, 1, 1].map(int), Q).unwrap();
        let q2 = QuadraticForm::diagonal(&[1, 2, 3, 4, 5, 6].map(int), Q).unwrap();
        let q3 = q1.checked_add(&q2).unwrap();
        assert_eq!(NetOfQuadrics::new(q1, q2, q3), Err(SystemError::Dependent));
    }

    #[test]
    fn random_nets_have_sextic_discriminants() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let net = random_net(&mut rng);
            let d = net.discriminant();
            assert_eq!(d.degree(), Some(6));
            assert!(d.is_homogeneous());
        }
        let net = random_net(&mut rng);
        let grams: Vec<Matrix<Rational>> = net.forms().iter().map(|q| q.gram().clone()).collect();
        assert_eq!(
            net.discriminant(),
            leibniz_det(&PolyMatrix::linear_combination(&grams).unwrap())
        );
    }

    #[test]
    fn net_coordinate_change_scales_by_det_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let net = random_net(&mut rng);
        let m = loop {
            let m = Matrix::from_fn(6, 6, Q, |_, _| int(rng.random_range(-1..=1)));
            if !Scalar::is_zero(&m.det().unwrap()) {
                break m;
            }
        };
        let iso = Isometry::new(m.clone()).unwrap();
        let [a, b, c] = &net.forms;
        let moved =
            NetOfQuadrics::new(a.transform(&iso), b.transform(&iso), c.transform(&iso)).unwrap();
        let d = m.det().unwrap();
        assert_eq!(
            moved.discriminant(),
            net.discriminant().scale(&(d.clone() * d))
        );
    }

    #[test]
    fn probe_examples() {
        let primes: Vec<OddPrime> = [7, 11, 13].map(prime).to_vec();
        let fermat = MultiPoly::parse("x0^6 + x1^6 + x2^6", None).unwrap();
        assert_eq!(
            sextic_smoothness_probe(&fermat, &primes).unwrap(),
            Smoothness::ProbablySmooth {
                primes: vec![7, 11, 13]
            }
        );
        let cone = MultiPoly::parse("x0^6 + x1^6 + 0*x2", Some(3)).unwrap();
        let Smoothness::Singular { witnesses } = sextic_smoothness_probe(&cone, &primes).unwrap()
        else {
            panic!("cone should be singular")
        };
        assert!(witnesses.iter().all(|w| w.point == vec![0, 0, 1]));
        let quartic = MultiPoly::parse("x0^4 + x1^4 + x2^4", None).unwrap();
        assert_eq!(
            sextic_smoothness_probe(&quartic, &primes),
            Err(SystemError::NotSextic)
        );
        let denominator = MultiPoly::parse("1/7*x0^6 + x1^6 + x2^6", None).unwrap();
        assert!(sextic_smoothness_probe(&denominator, &primes).is_err());
    }

    #[test]
    fn probe_separates_bad_reduction_from_singularity() {
        // x0^6 + x1^6 + 7 x2^6 is a cone mod 7 and smooth mod 11, 13
        let f = MultiPoly::from_terms(
            3,
            Q,
            vec![
                (Monomial::new(vec![6, 0, 0]), int(1)),
                (Monomial::new(vec![0, 6, 0]), int(1)),
                (Monomial::new(vec![0, 0, 6]), int(7)),
            ],
        );
        let primes: Vec<OddPrime> = [7, 11, 13].map(prime).to_vec();
        match sextic_smoothness_probe(&f, &primes).unwrap() {
            Smoothness::Unknown {
                smooth_at,
                singular_at,
            } => {
                assert_eq!(smooth_at, vec![11, 13]);
                assert_eq!(singular_at[0].p, 7);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn random_dense_net_probes_smooth() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let primes: Vec<OddPrime> = [7, 11, 13].map(prime).to_vec();
        let net = random_net(&mut rng);
        let cover = net.double_cover(&primes).unwrap();
        assert!(!cover.verdict.is_singular(), "{:?}", cover.verdict);
    }

    #[test]
    fn span_coordinates_recover_members() {
        let pencil = PencilOfQuadrics::from_diagonal_ints([0, 1, 2, 3]).unwrap();
        let m = pencil.member(&[int(2), int(-5)]);
        assert_eq!(pencil.span_coordinates(&m), Some(vec![int(2), int(-5)]));
        let off = QuadraticForm::from_poly(&MultiPoly::parse("x0*x1", Some(4)).unwrap()).unwrap();
        assert_eq!(pencil.span_coordinates(&off), None);
    }
}
