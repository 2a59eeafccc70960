//! Fixed inputs shared by the benchmarks in `benches/`.

use k3lab::algebra::{int, Matrix, OddPrime, Rational, Q};
use k3lab::mukai::{k3_lattice, OverlatticeSpec};
use k3lab::quadform::QuadraticForm;
use k3lab::systems::{NetOfQuadrics, PencilOfQuadrics};
use num_bigint::BigInt;

pub fn prime(p: u64) -> OddPrime {
    OddPrime::new(p).expect("odd prime")
}

pub fn diagonal_pencil() -> PencilOfQuadrics<Rational> {
    PencilOfQuadrics::from_diagonal_ints([0, 1, 2, 3]).expect("independent")
}

pub fn diagonal_net() -> NetOfQuadrics<Rational> {
    NetOfQuadrics::diagonal(&[0, 1, 2, 3, 4, 5].map(int), &[0, 1, 4, 9, 16, 25].map(int))
        .expect("independent")
}

/// Symmetric matrix with entries `(i + 1) * (j + 1) * k mod 7 - 3`.
fn dense_form(n: usize, k: i64) -> QuadraticForm<Rational> {
    let g = Matrix::from_fn(n, n, Q, |i, j| {
        int(((i as i64 + 1) * (j as i64 + 1) * k + (i + j) as i64).rem_euclid(7) - 3)
    });
    QuadraticForm::new(g).expect("symmetric")
}

pub fn dense_pencil() -> PencilOfQuadrics<Rational> {
    PencilOfQuadrics::new(dense_form(4, 2), dense_form(4, 3)).expect("independent")
}

pub fn dense_net() -> NetOfQuadrics<Rational> {
    NetOfQuadrics::new(dense_form(6, 1), dense_form(6, 2), dense_form(6, 5)).expect("independent")
}

/// `alpha = e + 4 f` in the first hyperbolic plane, `alpha^2 = 8 = 2 * 2^2`.
pub fn k3_overlattice_spec() -> OverlatticeSpec {
    let mut alpha = vec![BigInt::from(0); 22];
    alpha[0] = BigInt::from(1);
    alpha[1] = BigInt::from(4);
    OverlatticeSpec::new(k3_lattice(), alpha, 2).expect("valid vector")
}
