//! Seeded random instances: ring elements of small height, words, forms and
//! group elements. Everything is driven by a ChaCha8 stream from a `u64` seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrices::{Matrix, SkewForm};
use crate::rings::{RingElement, RingSpec, Scalar, UniPoly};
use crate::vaserstein::FormRegistry;
use crate::words::{Generator, GeneratorWord, PolynomialWord};

/// Name of the generator, for reports.
pub const PRNG: &str = "ChaCha8";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A ring element of small height: integers in [−5, 5], fractions with small
/// denominators, polynomials of degree at most 2.
pub fn random_element<R: Rng>(ring: RingSpec, rng: &mut R) -> RingElement {
    match ring {
        RingSpec::Integers => ring.from_i64(rng.gen_range(-5..=5)),
        RingSpec::Rationals => ring.rational(rng.gen_range(-5..=5), rng.gen_range(1..=4)).expect("nonzero denominator"),
        RingSpec::DyadicRationals => ring.dyadic(rng.gen_range(-8..=8), rng.gen_range(0..=3)).expect("dyadic"),
        RingSpec::PolynomialOverPrimeField(p) => {
            let deg = rng.gen_range(0..=2);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..p) as i64).collect();
            ring.poly(&coeffs).expect("valid modulus")
        }
    }
}

pub fn random_nonzero<R: Rng>(ring: RingSpec, rng: &mut R) -> RingElement {
    loop {
        let x = random_element(ring, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A polynomial in R[X] of degree at most `deg` with small coefficients.
pub fn random_poly<R: Rng>(ring: RingSpec, deg: usize, rng: &mut R) -> UniPoly {
    let coeffs = (0..=deg).map(|_| random_element(ring, rng)).collect();
    UniPoly::new(ring, coeffs).expect("single ring")
}

fn random_pair<R: Rng>(dim: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.gen_range(1..=dim);
    let mut j = rng.gen_range(1..dim);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// `len` random `se_{ij}(a)` generators for ψ_n.
pub fn random_se_word<R: Rng>(ring: RingSpec, n: usize, len: usize, rng: &mut R) -> GeneratorWord {
    let gens = (0..len)
        .map(|_| {
            let (i, j) = random_pair(2 * n, rng);
            Generator::SymSE { i, j, a: random_nonzero(ring, rng) }
        })
        .collect();
    GeneratorWord { ring, dim: 2 * n, gens }
}

/// `len` random `E_{ij}(a)` generators of size `dim` (none when `dim < 2`).
pub fn random_lin_word<R: Rng>(ring: RingSpec, dim: usize, len: usize, rng: &mut R) -> GeneratorWord {
    let len = if dim < 2 { 0 } else { len };
    let gens = (0..len)
        .map(|_| {
            let (i, j) = random_pair(dim, rng);
            Generator::LinE { i, j, a: random_nonzero(ring, rng) }
        })
        .collect();
    GeneratorWord { ring, dim, gens }
}

/// `φ = (1⊥ε₀)^t ψ_n (1⊥ε₀)` for a random elementary `ε₀`; returns φ and the word of `ε₀`.
pub fn random_pfaffian_one_form<R: Rng>(ring: RingSpec, n: usize, len: usize, rng: &mut R) -> (SkewForm, GeneratorWord) {
    let eps = random_lin_word(ring, 2 * n - 1, len, rng);
    let g = Matrix::identity(ring, 1).block_perp(&eps.eval(&FormRegistry::new()).expect("valid word")).expect("square");
    let psi = SkewForm::standard(ring, n);
    let phi = g.transpose().checked_mul(psi.matrix()).and_then(|m| m.checked_mul(&g)).expect("sizes agree");
    (SkewForm::new(phi).expect("congruent to a skew form"), eps)
}

/// `e_1` scrambled by a random elementary word: the first row of its evaluation.
pub fn random_unimodular<R: Rng>(ring: RingSpec, n: usize, len: usize, rng: &mut R) -> Vec<RingElement> {
    random_lin_word(ring, n, len, rng).eval(&FormRegistry::new()).expect("valid word").row(0).to_vec()
}

/// A word over R[X] that evaluates to `I` at `X = 0`: random generators with
/// parameters `u_k + X w_k(X)` followed by the inverses of their constant parts.
pub fn random_vanishing_polynomial_word<R: Rng>(ring: RingSpec, n: usize, len: usize, rng: &mut R) -> PolynomialWord {
    let mut gens = Vec::with_capacity(2 * len);
    let mut constants = Vec::with_capacity(len);
    for _ in 0..len {
        let (i, j) = random_pair(2 * n, rng);
        let u = if rng.gen_bool(0.3) { ring.zero() } else { random_element(ring, rng) };
        let w = random_poly(ring, 1, rng);
        let param = UniPoly::constant(u.clone()).plus(&UniPoly::x(ring).times(&w));
        gens.push(Generator::SymSE { i, j, a: param });
        constants.push(Generator::SymSE { i, j, a: UniPoly::constant(-u) });
    }
    gens.extend(constants.into_iter().rev());
    GeneratorWord { ring, dim: 2 * n, gens }
}

/// A random element of `Sp_φ(R)` for a random Pfaffian-one φ:
/// `(1⊥ε₀)⁻¹ S (1⊥ε₀)` with `S` a random `se` word. Returns φ, ε₀ and the matrix.
pub fn random_sp_phi<R: Rng>(ring: RingSpec, n: usize, len: usize, rng: &mut R) -> (SkewForm, GeneratorWord, Matrix) {
    let (phi, eps) = random_pfaffian_one_form(ring, n, len, rng);
    let forms = FormRegistry::new();
    let one = Matrix::identity(ring, 1);
    let g = one.block_perp(&eps.eval(&forms).expect("valid word")).expect("square");
    let g_inv = one.block_perp(&eps.invert().eval(&forms).expect("valid word")).expect("square");
    let s = random_se_word(ring, n, len, rng).eval(&forms).expect("valid word");
    let m = g_inv.checked_mul(&s).and_then(|x| x.checked_mul(&g)).expect("sizes agree");
    (phi, eps, m)
}

/// A random skew-symmetric matrix with entries of small height.
pub fn random_skew<R: Rng>(ring: RingSpec, size: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(ring, size, size);
    for i in 0..size {
        for j in (i + 1)..size {
            let x = random_element(ring, rng);
            m[(j, i)] = -&x;
            m[(i, j)] = x;
        }
    }
    m
}
