//! Random points of the determinantal / Pfaffian loci over F_p and the
//! relation `T^2 = c * disc(B)` between their invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::invariants::{
    covariance_check, group_invariance_check, invariants, random_general_linear,
    random_special_linear, GroupAction, InvariantData,
};
use super::{ConstructionError, LinearMatrix};
use crate::algebra::{Fp, Matrix, Scalar};
use crate::quadform::{QuadFormError, QuadraticForm};
use crate::systems::{projective_points, QuadricSystem};

/// Random parameter draws before falling back to a full sweep.
const RANDOM_TRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemPoint<S: Scalar> {
    pub matrix: LinearMatrix<S>,
    /// The member `q_lambda` with `det A(x) = q_lambda(x)` (or `Pf`).
    pub lambda: Vec<S>,
    pub invariants: InvariantData<S>,
}

fn represent(q: &QuadraticForm<Fp>) -> Result<LinearMatrix<Fp>, QuadFormError> {
    match q.dim() {
        4 => q.express_as_2x2_det(),
        6 => q.express_as_pfaffian(),
        n => Err(QuadFormError::Dimension(n)),
    }
}

fn try_member<Sys: QuadricSystem<Fp>>(system: &Sys, lambda: &[Fp]) -> Option<LinearMatrix<Fp>> {
    let q = system.member(lambda);
    if q.is_degenerate() {
        return None;
    }
    represent(&q).ok()
}

/// Draws a parameter point with a nondegenerate, split member and returns
/// the matrix of linear forms realizing that member.
pub fn sample_point<Sys: QuadricSystem<Fp>>(
    system: &Sys,
    seed: u64,
) -> Result<SystemPoint<Fp>, ConstructionError> {
    sample_with(system, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_with<Sys: QuadricSystem<Fp>, R: Rng>(
    system: &Sys,
    rng: &mut R,
) -> Result<SystemPoint<Fp>, ConstructionError> {
    let p = system.field();
    let k = system.forms().len();
    if system.discriminant_poly().is_zero() {
        return Err(ConstructionError::BadReduction(p.get()));
    }
    let random = (0..RANDOM_TRIES).find_map(|_| {
        let lambda: Vec<Fp> = (0..k)
            .map(|_| Fp::new(p, rng.random_range(0..p.get() as i64)))
            .collect();
        try_member(system, &lambda).map(|a| (lambda, a))
    });
    let found = random
        .or_else(|| projective_points(k, p).find_map(|l| try_member(system, &l).map(|a| (l, a))));
    let (lambda, matrix) = found.ok_or(ConstructionError::NoSplitMember(p.get()))?;
    let invariants = invariants(&matrix, system)?;
    Ok(SystemPoint {
        matrix,
        lambda,
        invariants,
    })
}

/// Sample `i` of a run uses stream `i` of the seeded generator.
fn stream_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub sample: usize,
    pub t_squared: Fp,
    pub disc: Fp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub p: u32,
    pub samples: usize,
    /// `T^2 / disc(B)` on the first sample.
    pub c: Fp,
    pub passed: usize,
    pub failed: Vec<RelationFailure>,
    #[serde(skip)]
    pub values: Vec<InvariantData<Fp>>,
}

impl RelationReport {
    pub fn is_consistent(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn check(&self) -> Result<(), ConstructionError> {
        match self.failed.first() {
            None => Ok(()),
            Some(f) => Err(ConstructionError::InconsistentConstant {
                first: 0,
                witness: f.sample,
            }),
        }
    }
}

/// Samples `count` points and checks that `T^2 / disc(B)` is one constant.
pub fn verify_relation<Sys: QuadricSystem<Fp> + Sync>(
    system: &Sys,
    count: usize,
    seed: u64,
) -> Result<RelationReport, ConstructionError> {
    if count < 2 {
        return Err(ConstructionError::TooFewSamples);
    }
    let points: Vec<SystemPoint<Fp>> = (0..count)
        .into_par_iter()
        .map(|i| sample_with(system, &mut stream_rng(seed, i)))
        .collect::<Result<_, _>>()?;
    let disc = system.discriminant_poly();
    let pairs: Vec<(Fp, Fp)> = points
        .iter()
        .map(|pt| {
            (
                pt.invariants.t * pt.invariants.t,
                disc.eval(&pt.invariants.b).unwrap(),
            )
        })
        .collect();
    // sampled members are nondegenerate and B = lambda, so disc(B) != 0
    let (t0, d0) = pairs[0];
    let c = t0.div(&d0).ok_or(ConstructionError::NotInSpan)?;
    let failed: Vec<RelationFailure> = pairs
        .iter()
        .enumerate()
        .filter(|(_, (t2, d))| *t2 != c * *d)
        .map(|(i, &(t_squared, disc))| RelationFailure {
            sample: i,
            t_squared,
            disc,
        })
        .collect();
    Ok(RelationReport {
        p: system.field().get(),
        samples: count,
        c,
        passed: count - failed.len(),
        failed,
        values: points.into_iter().map(|pt| pt.invariants).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: Vec<usize>,
}

/// For each trial: sample a point, act by a random special linear element,
/// compare `(B, T)` before and after.
pub fn invariance_trials<Sys: QuadricSystem<Fp> + Sync>(
    system: &Sys,
    count: usize,
    seed: u64,
) -> Result<TrialSummary, ConstructionError> {
    let p = system.field();
    let outcomes: Vec<bool> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let point = sample_with(system, &mut rng)?;
            let action = if point.matrix.size() == 2 {
                GroupAction::Pair(
                    random_special_linear(2, p, &mut rng),
                    random_special_linear(2, p, &mut rng),
                )
            } else {
                GroupAction::Congruence(random_special_linear(4, p, &mut rng))
            };
            Ok(group_invariance_check(&point.matrix, system, &action)?.invariant)
        })
        .collect::<Result<_, ConstructionError>>()?;
    Ok(summarize(outcomes))
}

/// Like [`invariance_trials`] with invertible rather than unimodular
/// elements, checking the covariance weights of `(B, T)`.
pub fn covariance_trials<Sys: QuadricSystem<Fp> + Sync>(
    system: &Sys,
    count: usize,
    seed: u64,
) -> Result<TrialSummary, ConstructionError> {
    let p = system.field();
    let outcomes: Vec<bool> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let point = sample_with(system, &mut rng)?;
            let action = if point.matrix.size() == 2 {
                GroupAction::Pair(
                    random_general_linear(2, p, &mut rng),
                    random_general_linear(2, p, &mut rng),
                )
            } else {
                GroupAction::Congruence(random_general_linear(4, p, &mut rng))
            };
            Ok(covariance_check(&point.matrix, system, &action)?.holds)
        })
        .collect::<Result<_, ConstructionError>>()?;
    Ok(summarize(outcomes))
}

fn summarize(outcomes: Vec<bool>) -> TrialSummary {
    let failed: Vec<usize> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect();
    TrialSummary {
        trials: outcomes.len(),
        passed: outcomes.len() - failed.len(),
        failed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degree: u32,
    pub monomials: usize,
    /// Dimension of the space of forms of this weighted degree vanishing on
    /// every sample.
    pub relations: usize,
}

/// Counts polynomial relations among sampled `(B, T)` values in each even
/// weighted degree up to `max_degree`, with `B_i` of weight 2 and `T` of
/// weight `t_weight`.
pub fn relation_degree_profile(
    values: &[InvariantData<Fp>],
    t_weight: u32,
    max_degree: u32,
) -> Vec<DegreeProfile> {
    let Some(first) = values.first() else {
        return Vec::new();
    };
    let p = first.t.prime();
    let k = first.b.len();
    (2..=max_degree)
        .step_by(2)
        .map(|degree| {
            let mut monomials: Vec<(Vec<u32>, u32)> = Vec::new();
            let mut t_exp = 0;
            while t_exp * t_weight <= degree {
                let rest = degree - t_exp * t_weight;
                if rest.is_multiple_of(2) {
                    for e in exponent_vectors(k, rest / 2) {
                        monomials.push((e, t_exp));
                    }
                }
                t_exp += 1;
            }
            let m = Matrix::from_fn(values.len(), monomials.len(), p, |r, c| {
                let (e, te) = &monomials[c];
                let v = &values[r];
                e.iter()
                    .zip(&v.b)
                    .fold(v.t.pow(*te as u64), |acc, (&ei, b)| acc * b.pow(ei as u64))
            });
            DegreeProfile {
                degree,
                monomials: monomials.len(),
                relations: monomials.len() - m.rank(),
            }
        })
        .collect()
}

fn exponent_vectors(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|first| {
            exponent_vectors(k - 1, total - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}
