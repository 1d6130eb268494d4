//! The standard-form side: ψ_n, the pairing σ, the generators `se_{ij}`,
//! factorization of `Sp_{2n}` over euclidean domains, the rewriting into
//! border generators, and the relative (ideal-level) rewritings.

use crate::error::{Error, Result};
use crate::matrices::{Matrix, SkewForm};
use crate::rings::{RingElement, RingSpec, Scalar, UniPoly};
use crate::vaserstein::FormRegistry;
use crate::words::{elementary_matrix, Generator, GeneratorWord, PolynomialWord};

/// The pairing permutation σ(2i−1) = 2i, σ(2i) = 2i−1 (1-based).
pub fn sigma(i: usize) -> usize {
    if i % 2 == 1 {
        i + 1
    } else {
        i - 1
    }
}

/// `(-1)^{i+j}` as a sign flag: true for −1.
fn odd(i: usize, j: usize) -> bool {
    (i + j) % 2 == 1
}

fn check_indices(i: usize, j: usize, n: usize) -> Result<()> {
    if i == 0 || j == 0 || i > 2 * n || j > 2 * n || i == j {
        return Err(Error::Index(format!("se_({i},{j}) needs 1 <= i != j <= {}", 2 * n)));
    }
    Ok(())
}

/// The elementary symplectic matrix `se_{ij}(a)` of size 2n.
pub fn se<E: Scalar>(i: usize, j: usize, a: &E, n: usize) -> Result<Matrix<E>> {
    check_indices(i, j, n)?;
    Ok(elementary_matrix(a.ring(), 2 * n, i, j, a, true))
}

/// The generator form of [`se`].
pub fn se_gen<E: Scalar>(i: usize, j: usize, a: E) -> Generator<E> {
    Generator::SymSE { i, j, a }
}

fn word<E: Scalar>(ring: RingSpec, n: usize, gens: Vec<Generator<E>>) -> GeneratorWord<E> {
    GeneratorWord { ring, dim: 2 * n, gens }
}

fn commutator<E: Scalar>(x: Generator<E>, y: Generator<E>) -> Vec<Generator<E>> {
    let (xi, yi) = (x.inverse(), y.inverse());
    vec![x, y, xi, yi]
}

/// The three commutator identities among elementary symplectic matrices,
/// with `[x, y] = x y x⁻¹ y⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorIdentity {
    /// `[se_{iσ(i)}(a), se_{σ(i)j}(b)] = se_{ij}(ab) · se_{σ(j)j}((−1)^{i+j} a b²)`, for `j ≠ i, σ(i)`.
    Paired,
    /// `[se_{ik}(a), se_{kj}(b)] = se_{ij}(ab)`, for `k ∉ {i, j, σ(i), σ(j)}` and `j ≠ i, σ(i)`.
    Chain,
    /// `[se_{ik}(a), se_{kσ(i)}(b)] = se_{iσ(i)}(2ab)`, for `k ≠ i, σ(i)`.
    Doubling,
}

/// Outcome of [`check_identity`]; both sides are kept as witnesses.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl CommutatorIdentity {
    /// Whether the index pattern satisfies the side conditions.
    pub fn admissible(self, i: usize, j: usize, k: usize, n: usize) -> bool {
        let in_range = |x: usize| (1..=2 * n).contains(&x);
        match self {
            CommutatorIdentity::Paired => in_range(i) && in_range(j) && j != i && j != sigma(i),
            CommutatorIdentity::Chain => {
                in_range(i)
                    && in_range(j)
                    && in_range(k)
                    && j != i
                    && j != sigma(i)
                    && ![i, j, sigma(i), sigma(j)].contains(&k)
            }
            CommutatorIdentity::Doubling => in_range(i) && in_range(k) && k != i && k != sigma(i),
        }
    }

    /// The two sides as generator words.
    pub fn sides(
        self,
        a: &RingElement,
        b: &RingElement,
        i: usize,
        j: usize,
        k: usize,
        n: usize,
    ) -> Result<(GeneratorWord, GeneratorWord)> {
        if !self.admissible(i, j, k, n) {
            return Err(Error::Index(format!("{self:?} identity with (i, j, k) = ({i}, {j}, {k}), n = {n}")));
        }
        let ring = a.ring();
        let ab = a * b;
        let (lhs, rhs) = match self {
            CommutatorIdentity::Paired => {
                let sign = if odd(i, j) { -ring.one() } else { ring.one() };
                (
                    commutator(se_gen(i, sigma(i), a.clone()), se_gen(sigma(i), j, b.clone())),
                    vec![se_gen(i, j, ab.clone()), se_gen(sigma(j), j, &sign * &(&ab * b))],
                )
            }
            CommutatorIdentity::Chain => {
                (commutator(se_gen(i, k, a.clone()), se_gen(k, j, b.clone())), vec![se_gen(i, j, ab)])
            }
            CommutatorIdentity::Doubling => (
                commutator(se_gen(i, k, a.clone()), se_gen(k, sigma(i), b.clone())),
                vec![se_gen(i, sigma(i), &ring.from_i64(2) * &ab)],
            ),
        };
        Ok((word(ring, n, lhs), word(ring, n, rhs)))
    }
}

/// Checks one instance of a commutator identity as an exact matrix equation.
/// `j` is ignored by [`CommutatorIdentity::Doubling`].
pub fn check_identity(
    pattern: CommutatorIdentity,
    a: &RingElement,
    b: &RingElement,
    i: usize,
    j: usize,
    k: usize,
    n: usize,
) -> Result<IdentityCheck> {
    let (lhs, rhs) = pattern.sides(a, b, i, j, k, n)?;
    let forms = FormRegistry::new();
    let lhs = lhs.eval(&forms)?;
    let rhs = rhs.eval(&forms)?;
    Ok(IdentityCheck { holds: lhs == rhs, lhs, rhs })
}

/// True for `se_{1k}` / `se_{k1}`.
pub fn is_border<E: Scalar>(g: &Generator<E>) -> bool {
    matches!(g, Generator::SymSE { i, j, .. } if *i == 1 || *j == 1)
}

/// One piece of a border rewriting: `conjugator · generator · conjugator⁻¹`
/// (no conjugator means the bare generator). Parameters of the generator stay
/// in every ideal containing the input parameter.
type BorderPiece<E> = (Option<Generator<E>>, Generator<E>);

fn border_pieces<E: Scalar>(i: usize, j: usize, a: &E, n: usize) -> Result<Vec<BorderPiece<E>>> {
    check_indices(i, j, n)?;
    if a.is_zero() {
        return Ok(Vec::new());
    }
    if i == 1 || j == 1 {
        return Ok(vec![(None, se_gen(i, j, a.clone()))]);
    }
    if n < 2 {
        return Err(Error::Unsupported("border rewriting needs n >= 2".into()));
    }
    let ring = a.ring();
    let one = E::one_in(ring);
    if i == sigma(j) {
        // [se_{i1}(a/2), se_{1σ(i)}(1)] = se_{iσ(i)}(a)
        let h = a.halved()?;
        return Ok(vec![(None, se_gen(i, 1, h.clone())), (Some(se_gen(1, j, one)), se_gen(i, 1, h.negated()))]);
    }
    if i == 2 || j == 2 {
        // se_{ij}(a) and se_{σ(j)σ(i)}(−(−1)^{i+j} a) are the same matrix.
        let c = if odd(i, j) { a.clone() } else { a.negated() };
        return Ok(vec![(None, se_gen(sigma(j), sigma(i), c))]);
    }
    // [se_{i1}(a), se_{1j}(1)] = se_{ij}(a), valid since 1 ∉ {i, j, σ(i), σ(j)}.
    Ok(vec![(None, se_gen(i, 1, a.clone())), (Some(se_gen(1, j, one)), se_gen(i, 1, a.negated()))])
}

/// Rewrites a single `se_{ij}(a)` as a word in border generators
/// `se_{1k}`, `se_{k1}` only. Border inputs are returned unchanged.
///
/// Needs R = 2R for non-border inputs.
pub fn rewrite_to_border<E: Scalar>(g: &Generator<E>, n: usize) -> Result<GeneratorWord<E>> {
    let Generator::SymSE { i, j, a } = g else {
        return Err(Error::Unsupported("border rewriting applies to se generators".into()));
    };
    let ring = a.ring();
    if !is_border(g) && !a.is_zero() && !ring.two_is_unit() {
        return Err(Error::TwoNotUnit(ring));
    }
    let mut gens = Vec::new();
    for (conj, inner) in border_pieces(*i, *j, a, n)? {
        match conj {
            None => gens.push(inner),
            Some(c) => {
                let ci = c.inverse();
                gens.extend([c, inner, ci]);
            }
        }
    }
    Ok(word(ring, n, gens))
}

/// Rewrites every generator of an `se` word into border generators;
/// `Conj` generators are rewritten so that inner parameters stay in the same
/// ideal: `Conj(o, se_{ij}(x))` becomes a product of `Conj(o', border(x'))`.
pub fn rewrite_word_to_border<E: Scalar>(w: &GeneratorWord<E>) -> Result<GeneratorWord<E>> {
    if w.dim % 2 == 1 {
        return Err(Error::OddSize(w.dim));
    }
    let n = w.dim / 2;
    let mut out = GeneratorWord::empty(w.ring, w.dim);
    for g in &w.gens {
        match g {
            Generator::SymSE { .. } => out.gens.extend(rewrite_to_border(g, n)?.gens),
            Generator::Conj { outer, inner } => {
                let outer = rewrite_word_to_border(outer)?;
                let Generator::SymSE { i, j, a } = inner.as_ref() else {
                    return Err(Error::Unsupported("border rewriting of a non-se conjugate".into()));
                };
                if !is_border(inner) && !a.is_zero() && !w.ring.two_is_unit() {
                    return Err(Error::TwoNotUnit(w.ring));
                }
                for (conj, piece) in border_pieces(*i, *j, a, n)? {
                    let mut o = outer.clone();
                    o.gens.extend(conj);
                    out.push(Generator::conj(o, piece));
                }
            }
            _ => return Err(Error::Unsupported("border rewriting applies to se words".into())),
        }
    }
    Ok(out)
}

/// Factors `S ∈ Sp_{2n}(R)` (for ψ_n) into `se` generators.
///
/// Works one hyperbolic pair at a time: euclidean steps bring the pair's
/// first column to `e_{2p+1}`, symplecticity then fixes the partner row, and
/// the remaining column and row entries are cleared, leaving `I_{2p+2} ⊥ S'`.
/// The result is certified by re-multiplication.
pub fn factor_sp(s: &Matrix) -> Result<GeneratorWord> {
    if !s.is_square() || s.rows() % 2 == 1 {
        return Err(Error::Dimension("factor_sp needs an even square matrix".into()));
    }
    let ring = s.ring();
    let n = s.rows() / 2;
    if !s.is_symplectic_for(SkewForm::standard(ring, n).matrix())? {
        return Err(Error::NotSymplectic);
    }
    let mut red = Reducer { m: s.clone(), ops: Vec::new() };
    for p in 0..n {
        red.clear_pair(p, n)?;
    }
    if !red.m.is_identity() {
        return Err(Error::Certification("reduction did not reach the identity".into()));
    }
    // ops_k ⋯ ops_1 · S = I, so S = ops_1⁻¹ ⋯ ops_k⁻¹.
    let gens = red.ops.iter().map(Generator::inverse).collect();
    let w = word(ring, n, gens).simplify();
    if w.eval(&FormRegistry::new())? != *s {
        return Err(Error::Certification("factor_sp word does not re-evaluate to the input".into()));
    }
    Ok(w)
}

struct Reducer {
    m: Matrix,
    ops: Vec<Generator>,
}

impl Reducer {
    /// Left-multiplies by `se_{ij}(a)` (1-based): row i += a·row j and,
    /// unless i = σ(j), row σ(j) −= (−1)^{i+j} a·row σ(i).
    fn apply(&mut self, i: usize, j: usize, a: RingElement) {
        if a.is_zero() {
            return;
        }
        let cols = self.m.cols();
        let add_row = |m: &mut Matrix, dst: usize, src: usize, c: &RingElement| {
            for col in 0..cols {
                let x = &m[(src - 1, col)];
                if !x.is_zero() {
                    let t = x * c;
                    m[(dst - 1, col)] = &m[(dst - 1, col)] + &t;
                }
            }
        };
        add_row(&mut self.m, i, j, &a);
        if i != sigma(j) {
            let c = if odd(i, j) { a.clone() } else { -&a };
            add_row(&mut self.m, sigma(j), sigma(i), &c);
        }
        self.ops.push(se_gen(i, j, a));
    }

    fn entry(&self, row: usize, col: usize) -> &RingElement {
        &self.m[(row - 1, col - 1)]
    }

    /// Euclidean reduction of the pair (o, e = σ(o)) in column `c` until the
    /// even entry vanishes, using `se_{oe}` and `se_{eo}` only.
    fn reduce_within_pair(&mut self, o: usize, c: usize) -> Result<()> {
        let e = o + 1;
        while !self.entry(e, c).is_zero() {
            let (x, y) = (self.entry(o, c).clone(), self.entry(e, c).clone());
            if x.is_zero() {
                self.apply(o, e, x.ring().one());
            } else if y.euclidean_norm() >= x.euclidean_norm() {
                let (q, _) = y.div_rem(&x)?;
                self.apply(e, o, -q);
            } else {
                let (q, _) = x.div_rem(&y)?;
                self.apply(o, e, -q);
            }
        }
        Ok(())
    }

    fn clear_pair(&mut self, p: usize, n: usize) -> Result<()> {
        let ring = self.m.ring();
        let c = 2 * p + 1;
        let odds: Vec<usize> = (p..n).map(|q| 2 * q + 1).collect();
        for &o in &odds {
            self.reduce_within_pair(o, c)?;
        }
        // With every even entry zero, se_{o o'} between odd indices only moves
        // odd entries of column c.
        let pivot = loop {
            let nonzero: Vec<usize> = odds.iter().copied().filter(|&o| !self.entry(o, c).is_zero()).collect();
            let Some(&piv) = nonzero.iter().min_by_key(|&&o| self.entry(o, c).euclidean_norm()) else {
                return Err(Error::NotUnimodular("0".into()));
            };
            if nonzero.len() == 1 {
                break piv;
            }
            for &o in nonzero.iter().filter(|&&o| o != piv) {
                let (q, _) = self.entry(o, c).div_rem(self.entry(piv, c))?;
                self.apply(o, piv, -q);
            }
        };
        let g = self.entry(pivot, c).clone();
        if !g.is_unit() {
            return Err(Error::NotUnimodular(g.to_string()));
        }
        if pivot != c {
            self.apply(c, pivot, ring.one());
            self.apply(pivot, c, -ring.one());
        }
        if !g.is_one() {
            // (g, 0) → (g, 1) → (1, 1) → (1, 0)
            self.apply(c + 1, c, g.invert_unit()?);
            self.apply(c, c + 1, &ring.one() - &g);
            self.apply(c + 1, c, -ring.one());
        }
        // Column c is now e_c, which forces row c+1 = e_{c+1}^t.
        for k in (c + 2)..=(2 * n) {
            let t = self.entry(k, c + 1).clone();
            self.apply(k, c + 1, -t);
        }
        let t = self.entry(c, c + 1).clone();
        self.apply(c, c + 1, -t);
        Ok(())
    }
}

/// Splits each parameter as `v_k = u_k + X w_k` with `u_k = v_k(0)` and
/// returns `∏ γ_k se_{i_k j_k}(X w_k) γ_k⁻¹` with `γ_k = ∏_{s ≤ k} se_{i_s j_s}(u_s)`.
///
/// The input must specialize to the identity at `X = 0`. `E` generators are
/// accepted as well; both kinds satisfy the splitting property.
pub fn relativize_polynomial_word(w: &PolynomialWord) -> Result<PolynomialWord> {
    let forms = FormRegistry::new();
    let at_zero = substitute_word(w, &w.ring.zero())?;
    if !at_zero.eval(&forms)?.is_identity() {
        return Err(Error::NotIdentityAtZero);
    }
    let mut gamma: PolynomialWord = GeneratorWord::empty(w.ring, w.dim);
    let mut out = GeneratorWord::empty(w.ring, w.dim);
    for g in &w.gens {
        let (constant, tail) = match g {
            Generator::SymSE { i, j, a } => (
                se_gen(*i, *j, UniPoly::constant(a.constant_term())),
                se_gen(*i, *j, a.without_constant()),
            ),
            Generator::LinE { i, j, a } => (
                Generator::LinE { i: *i, j: *j, a: UniPoly::constant(a.constant_term()) },
                Generator::LinE { i: *i, j: *j, a: a.without_constant() },
            ),
            _ => return Err(Error::Unsupported("relativization needs se or E generators".into())),
        };
        gamma.push(constant);
        gamma = gamma.simplify();
        out.push(Generator::conj(gamma.clone(), tail));
    }
    let expected = w.eval(&forms)?;
    if out.eval(&forms)? != expected {
        return Err(Error::Certification("relativized word changed the evaluation".into()));
    }
    Ok(out)
}

/// Substitutes `X = a` in every parameter, conjugators included.
pub fn substitute_word(w: &PolynomialWord, a: &RingElement) -> Result<GeneratorWord> {
    w.map_params(|p| p.eval(a))
}

/// Entrywise substitution `X = a` in a matrix over R[X].
pub fn specialize(m: &Matrix<UniPoly>, a: &RingElement) -> Result<Matrix> {
    m.map(|p| p.eval(a))
}
