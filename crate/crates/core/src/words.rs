//! Generator words: the output format of every factorization.
//!
//! A word is a symbolic product of generators, evaluated left to right.
//! Nothing is pre-multiplied; [`GeneratorWord::eval`] multiplies on demand.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrices::{IdealSpec, Matrix};
use crate::rings::{RingElement, RingSpec, Scalar, UniPoly};
use crate::symplectic::sigma;
use crate::vaserstein::FormRegistry;

/// A tagged group generator. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator<E: Scalar = RingElement> {
    /// `E_{ij}(a) = I + a e_{ij}`.
    LinE { i: usize, j: usize, a: E },
    /// The elementary symplectic matrix `se_{ij}(a)`.
    SymSE { i: usize, j: usize, a: E },
    /// Vaserstein's column generator `C_φ(v)` for the registered form `form`.
    VasC { form: String, v: Vec<E> },
    /// Vaserstein's row generator `R_φ(v)`.
    VasR { form: String, v: Vec<E> },
    /// `outer · inner · outer⁻¹`.
    Conj { outer: GeneratorWord<E>, inner: Box<Generator<E>> },
}

/// A word of generators acting on `dim × dim` matrices over `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorWord<E: Scalar = RingElement> {
    pub ring: RingSpec,
    pub dim: usize,
    pub gens: Vec<Generator<E>>,
}

/// Words whose parameters live in R[X].
pub type PolynomialWord = GeneratorWord<UniPoly>;

impl<E: Scalar> Generator<E> {
    pub fn conj(outer: GeneratorWord<E>, inner: Generator<E>) -> Self {
        Generator::Conj { outer, inner: Box::new(inner) }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Generator::LinE { i, j, a } => Generator::LinE { i: *i, j: *j, a: a.negated() },
            Generator::SymSE { i, j, a } => Generator::SymSE { i: *i, j: *j, a: a.negated() },
            // C_φ(v)⁻¹ = C_φ(-v) because νd = 0 and ν is skew; same for R with c^tμ = 0.
            Generator::VasC { form, v } => Generator::VasC { form: form.clone(), v: v.iter().map(E::negated).collect() },
            Generator::VasR { form, v } => Generator::VasR { form: form.clone(), v: v.iter().map(E::negated).collect() },
            Generator::Conj { outer, inner } => Generator::conj(outer.clone(), inner.inverse()),
        }
    }

    /// True when the generator is the identity syntactically.
    pub fn is_trivial(&self) -> bool {
        match self {
            Generator::LinE { a, .. } | Generator::SymSE { a, .. } => a.is_zero(),
            Generator::VasC { v, .. } | Generator::VasR { v, .. } => v.iter().all(E::is_zero),
            Generator::Conj { inner, .. } => inner.is_trivial(),
        }
    }

    /// All parameters lie in the ideal (for `Conj`, the inner parameters).
    pub fn params_in_ideal(&self, ideal: &IdealSpec<E>) -> Result<bool> {
        match self {
            Generator::LinE { a, .. } | Generator::SymSE { a, .. } => ideal.contains(a),
            Generator::VasC { v, .. } | Generator::VasR { v, .. } => {
                for x in v {
                    if !ideal.contains(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Generator::Conj { inner, .. } => inner.params_in_ideal(ideal),
        }
    }

    /// Applies `f` to every scalar parameter, recursing into conjugators.
    pub fn map_params<F: Scalar, M: Fn(&E) -> Result<F>>(&self, f: &M) -> Result<Generator<F>> {
        Ok(match self {
            Generator::LinE { i, j, a } => Generator::LinE { i: *i, j: *j, a: f(a)? },
            Generator::SymSE { i, j, a } => Generator::SymSE { i: *i, j: *j, a: f(a)? },
            Generator::VasC { form, v } => {
                Generator::VasC { form: form.clone(), v: v.iter().map(f).collect::<Result<_>>()? }
            }
            Generator::VasR { form, v } => {
                Generator::VasR { form: form.clone(), v: v.iter().map(f).collect::<Result<_>>()? }
            }
            Generator::Conj { outer, inner } => Generator::conj(outer.map_params_with(f)?, inner.map_params(f)?),
        })
    }

    fn check(&self, ring: RingSpec, dim: usize) -> Result<()> {
        let bad_index = |i: usize, j: usize| Error::Index(format!("generator ({i},{j}) in dimension {dim}"));
        match self {
            Generator::LinE { i, j, a } | Generator::SymSE { i, j, a } => {
                if *i == 0 || *j == 0 || *i > dim || *j > dim || i == j {
                    return Err(bad_index(*i, *j));
                }
                if matches!(self, Generator::SymSE { .. }) && dim % 2 == 1 {
                    return Err(Error::OddSize(dim));
                }
                if a.ring() != ring {
                    return Err(Error::RingMismatch(ring, a.ring()));
                }
            }
            Generator::VasC { v, .. } | Generator::VasR { v, .. } => {
                if v.len() + 1 != dim {
                    return Err(Error::Dimension(format!("vector of length {} in dimension {dim}", v.len())));
                }
                if let Some(x) = v.iter().find(|x| x.ring() != ring) {
                    return Err(Error::RingMismatch(ring, x.ring()));
                }
            }
            Generator::Conj { outer, inner } => {
                if outer.ring != ring || outer.dim != dim {
                    return Err(Error::Dimension("conjugator of a different shape".into()));
                }
                outer.validate()?;
                inner.check(ring, dim)?;
            }
        }
        Ok(())
    }
}

/// Right-multiplies by `I + a e_{ij}` in place: column j += a · column i.
fn right_elementary<E: Scalar>(m: &mut Matrix<E>, i: usize, j: usize, a: &E) {
    for r in 0..m.rows() {
        let x = &m[(r, i - 1)];
        if !x.is_zero() {
            let add = x.times(a);
            m[(r, j - 1)] = m[(r, j - 1)].plus(&add);
        }
    }
}

impl<E: Scalar> GeneratorWord<E> {
    pub fn new(ring: RingSpec, dim: usize, gens: Vec<Generator<E>>) -> Result<Self> {
        let w = GeneratorWord { ring, dim, gens };
        w.validate()?;
        Ok(w)
    }

    pub fn empty(ring: RingSpec, dim: usize) -> Self {
        GeneratorWord { ring, dim, gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: Generator<E>) {
        self.gens.push(g);
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Dimension("word of dimension 0".into()));
        }
        self.gens.iter().try_for_each(|g| g.check(self.ring, self.dim))
    }

    /// `self ++ other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("concatenating dimensions {} and {}", self.dim, other.dim)));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(GeneratorWord { gens, ..self.clone_header() })
    }

    fn clone_header(&self) -> Self {
        GeneratorWord { ring: self.ring, dim: self.dim, gens: Vec::new() }
    }

    /// The matrix of a single generator.
    pub fn generator_matrix(&self, g: &Generator<E>, forms: &FormRegistry) -> Result<Matrix<E>> {
        let mut m = Matrix::identity(self.ring, self.dim);
        self.apply_right(&mut m, g, forms)?;
        Ok(m)
    }

    fn apply_right(&self, m: &mut Matrix<E>, g: &Generator<E>, forms: &FormRegistry) -> Result<()> {
        match g {
            Generator::LinE { i, j, a } => right_elementary(m, *i, *j, a),
            Generator::SymSE { i, j, a } => {
                right_elementary(m, *i, *j, a);
                let (si, sj) = (sigma(*i), sigma(*j));
                if *i != sj {
                    // se_{ij}(a) = I + a e_{ij} - (-1)^{i+j} a e_{σ(j)σ(i)}; the two
                    // units commute since j ≠ σ(j) and σ(i) ≠ i.
                    let c = if (i + j) % 2 == 0 { a.negated() } else { a.clone() };
                    right_elementary(m, sj, si, &c);
                }
            }
            Generator::VasC { form, v } => {
                let fd = forms.get(form, self.ring, self.dim)?;
                *m = m.checked_mul(&fd.c_of(v)?)?;
            }
            Generator::VasR { form, v } => {
                let fd = forms.get(form, self.ring, self.dim)?;
                *m = m.checked_mul(&fd.r_of(v)?)?;
            }
            Generator::Conj { outer, inner } => {
                let o = outer.eval(forms)?;
                let oi = outer.invert().eval(forms)?;
                let inner_m = self.generator_matrix(inner, forms)?;
                *m = m.checked_mul(&o)?.checked_mul(&inner_m)?.checked_mul(&oi)?;
            }
        }
        Ok(())
    }

    /// Left-to-right product of the generator matrices; the empty word is `I`.
    pub fn eval(&self, forms: &FormRegistry) -> Result<Matrix<E>> {
        self.validate()?;
        let mut m = Matrix::identity(self.ring, self.dim);
        for g in &self.gens {
            self.apply_right(&mut m, g, forms)?;
        }
        Ok(m)
    }

    /// Evaluation by explicit multiplication of generator matrices from the
    /// right end; independent of the in-place column updates of [`eval`].
    ///
    /// [`eval`]: GeneratorWord::eval
    pub fn eval_by_products(&self, forms: &FormRegistry) -> Result<Matrix<E>> {
        self.validate()?;
        let mut m = Matrix::identity(self.ring, self.dim);
        for g in self.gens.iter().rev() {
            let gm = match g {
                Generator::LinE { i, j, a } => elementary_matrix(self.ring, self.dim, *i, *j, a, false),
                Generator::SymSE { i, j, a } => elementary_matrix(self.ring, self.dim, *i, *j, a, true),
                Generator::Conj { outer, inner } => {
                    let inner_word = GeneratorWord { gens: vec![(**inner).clone()], ..self.clone_header() };
                    outer
                        .eval_by_products(forms)?
                        .checked_mul(&inner_word.eval_by_products(forms)?)?
                        .checked_mul(&outer.invert().eval_by_products(forms)?)?
                }
                _ => self.generator_matrix(g, forms)?,
            };
            m = gm.checked_mul(&m)?;
        }
        Ok(m)
    }

    pub fn invert(&self) -> Self {
        GeneratorWord { gens: self.gens.iter().rev().map(Generator::inverse).collect(), ..self.clone_header() }
    }

    /// Merges adjacent `E`/`se` generators with equal indices by adding
    /// parameters and drops trivial generators. Conjugators are simplified
    /// recursively; a `Conj` is kept even when its conjugator becomes empty.
    pub fn simplify(&self) -> Self {
        let mut out: Vec<Generator<E>> = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let g = match g {
                Generator::Conj { outer, inner } => Generator::conj(outer.simplify(), (**inner).clone()),
                other => other.clone(),
            };
            if g.is_trivial() {
                continue;
            }
            let merged = match (out.last(), &g) {
                (Some(Generator::LinE { i, j, a }), Generator::LinE { i: i2, j: j2, a: b }) if (i, j) == (i2, j2) => {
                    Some(Generator::LinE { i: *i, j: *j, a: a.plus(b) })
                }
                (Some(Generator::SymSE { i, j, a }), Generator::SymSE { i: i2, j: j2, a: b })
                    if (i, j) == (i2, j2) =>
                {
                    Some(Generator::SymSE { i: *i, j: *j, a: a.plus(b) })
                }
                _ => None,
            };
            match merged {
                Some(m) => {
                    out.pop();
                    if !m.is_trivial() {
                        out.push(m);
                    }
                }
                None => out.push(g),
            }
        }
        GeneratorWord { gens: out, ..self.clone_header() }
    }

    /// Every generator is a bare generator with parameters in the ideal, or a
    /// conjugate whose inner parameters lie in the ideal.
    pub fn word_in_ideal(&self, ideal: &IdealSpec<E>) -> Result<bool> {
        for g in &self.gens {
            if !g.params_in_ideal(ideal)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn map_params<F: Scalar>(&self, f: impl Fn(&E) -> Result<F>) -> Result<GeneratorWord<F>> {
        self.map_params_with(&f)
    }

    fn map_params_with<F: Scalar, M: Fn(&E) -> Result<F>>(&self, f: &M) -> Result<GeneratorWord<F>> {
        let gens = self.gens.iter().map(|g| g.map_params(f)).collect::<Result<_>>()?;
        Ok(GeneratorWord { ring: self.ring, dim: self.dim, gens })
    }

    /// Embeds the word into a larger dimension, shifting `E`/`se` indices by
    /// `offset` (`I_offset ⊥ w ⊥ I`).
    pub fn shifted(&self, offset: usize, new_dim: usize) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| match g {
                Generator::LinE { i, j, a } => Ok(Generator::LinE { i: i + offset, j: j + offset, a: a.clone() }),
                Generator::SymSE { i, j, a } => Ok(Generator::SymSE { i: i + offset, j: j + offset, a: a.clone() }),
                _ => Err(Error::Unsupported("shifting non-elementary generators".into())),
            })
            .collect::<Result<_>>()?;
        GeneratorWord::new(self.ring, new_dim, gens)
    }

    /// Transpose of an `E`-word: reversed order, indices swapped.
    pub fn transpose_linear(&self) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .rev()
            .map(|g| match g {
                Generator::LinE { i, j, a } => Ok(Generator::LinE { i: *j, j: *i, a: a.clone() }),
                _ => Err(Error::Unsupported("transpose of non-linear generators".into())),
            })
            .collect::<Result<_>>()?;
        Ok(GeneratorWord { gens, ..self.clone_header() })
    }
}

pub(crate) fn elementary_matrix<E: Scalar>(
    ring: RingSpec,
    dim: usize,
    i: usize,
    j: usize,
    a: &E,
    symplectic: bool,
) -> Matrix<E> {
    let mut m: Matrix<E> = Matrix::identity(ring, dim);
    m[(i - 1, j - 1)] = m[(i - 1, j - 1)].plus(a);
    if symplectic && i != sigma(j) {
        let (r, c) = (sigma(j) - 1, sigma(i) - 1);
        let term = if (i + j) % 2 == 0 { a.clone() } else { a.negated() };
        m[(r, c)] = m[(r, c)].minus(&term);
    }
    m
}

// JSON: {"ring": <tag>, "n": k, "gens": [...]}; odd dimensions use "dim".
impl<E: Scalar> GeneratorWord<E> {
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("ring".into(), self.ring.to_json());
        if self.dim % 2 == 0 {
            obj.insert("n".into(), json!(self.dim / 2));
        } else {
            obj.insert("dim".into(), json!(self.dim));
        }
        obj.insert("gens".into(), Value::Array(self.gens.iter().map(generator_to_json).collect()));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = RingSpec::from_json(v.get("ring").ok_or_else(|| Error::Parse("word without ring".into()))?)?;
        Self::from_json_in(ring, v)
    }

    pub fn from_json_in(ring: RingSpec, v: &Value) -> Result<Self> {
        if let Some(tag) = v.get("ring") {
            if RingSpec::from_json(tag)? != ring {
                return Err(Error::Parse("word ring disagrees with its context".into()));
            }
        }
        let dim = match (v.get("dim").and_then(Value::as_u64), v.get("n").and_then(Value::as_u64)) {
            (Some(d), _) => d as usize,
            (None, Some(n)) => 2 * n as usize,
            _ => return Err(Error::Parse("word without \"n\" or \"dim\"".into())),
        };
        let gens = v
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("word without gens".into()))?
            .iter()
            .map(|g| generator_from_json(ring, dim, g))
            .collect::<Result<Vec<_>>>()?;
        GeneratorWord::new(ring, dim, gens).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn generator_to_json<E: Scalar>(g: &Generator<E>) -> Value {
    match g {
        Generator::LinE { i, j, a } => json!({"t": "E", "i": i, "j": j, "a": a.to_json()}),
        Generator::SymSE { i, j, a } => json!({"t": "se", "i": i, "j": j, "a": a.to_json()}),
        Generator::VasC { form, v } => json!({"t": "C", "form": form, "v": v.iter().map(E::to_json).collect::<Vec<_>>()}),
        Generator::VasR { form, v } => json!({"t": "R", "form": form, "v": v.iter().map(E::to_json).collect::<Vec<_>>()}),
        Generator::Conj { outer, inner } => json!({"t": "conj", "outer": outer.to_json(), "inner": generator_to_json(inner)}),
    }
}

fn generator_from_json<E: Scalar>(ring: RingSpec, dim: usize, g: &Value) -> Result<Generator<E>> {
    let field = |k: &str| g.get(k).ok_or_else(|| Error::Parse(format!("generator without {k:?}: {g}")));
    let index = |k: &str| -> Result<usize> {
        field(k)?.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad index in {g}")))
    };
    let vector = || -> Result<Vec<E>> {
        field("v")?
            .as_array()
            .ok_or_else(|| Error::Parse(format!("bad vector in {g}")))?
            .iter()
            .map(|x| E::from_json(ring, x))
            .collect()
    };
    let form = || -> Result<String> {
        field("form")?.as_str().map(str::to_owned).ok_or_else(|| Error::Parse(format!("bad form id in {g}")))
    };
    match field("t")?.as_str() {
        Some("E") => Ok(Generator::LinE { i: index("i")?, j: index("j")?, a: E::from_json(ring, field("a")?)? }),
        Some("se") => Ok(Generator::SymSE { i: index("i")?, j: index("j")?, a: E::from_json(ring, field("a")?)? }),
        Some("C") => Ok(Generator::VasC { form: form()?, v: vector()? }),
        Some("R") => Ok(Generator::VasR { form: form()?, v: vector()? }),
        Some("conj") => {
            let outer = GeneratorWord::from_json_in(ring, field("outer")?)?;
            if outer.dim != dim {
                return Err(Error::Parse("conjugator dimension differs from the word".into()));
            }
            Ok(Generator::conj(outer, generator_from_json(ring, dim, field("inner")?)?))
        }
        _ => Err(Error::Parse(format!("unknown generator tag in {g}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::SkewForm;
    use crate::sampling::{random_element, random_se_word, rng_from_seed};

    const Q: RingSpec = RingSpec::Rationals;

    fn se(i: usize, j: usize, a: RingElement) -> Generator {
        Generator::SymSE { i, j, a }
    }

    fn forms() -> FormRegistry {
        FormRegistry::new()
    }

    #[test]
    fn empty_word_is_identity() {
        let w: GeneratorWord = GeneratorWord::empty(Q, 4);
        assert_eq!(w.eval(&forms()).unwrap(), Matrix::identity(Q, 4));
    }

    #[test]
    fn splitting_property() {
        let a = Q.rational(3, 7).unwrap();
        let b = Q.from_i64(-5);
        let w = GeneratorWord::new(Q, 4, vec![se(1, 2, a.clone()), se(1, 2, b.clone())]).unwrap();
        let single = GeneratorWord::new(Q, 4, vec![se(1, 2, &a + &b)]).unwrap();
        assert_eq!(w.eval(&forms()).unwrap(), single.eval(&forms()).unwrap());
        let w = GeneratorWord::new(Q, 4, vec![se(1, 3, a.clone()), se(1, 3, b.clone())]).unwrap();
        let single = GeneratorWord::new(Q, 4, vec![se(1, 3, &a + &b)]).unwrap();
        assert_eq!(w.eval(&forms()).unwrap(), single.eval(&forms()).unwrap());
    }

    #[test]
    fn se_matrix_entries() {
        // se_13(a) for n = 2 is I + a e_13 - a e_42
        let a = Q.from_i64(5);
        let w = GeneratorWord::new(Q, 4, vec![se(1, 3, a.clone())]).unwrap();
        let mut expected = Matrix::identity(Q, 4);
        expected[(0, 2)] = a.clone();
        expected[(3, 1)] = -a;
        assert_eq!(w.eval(&forms()).unwrap(), expected);
    }

    #[test]
    fn inversion_and_simplify() {
        let a = Q.from_i64(2);
        let w = GeneratorWord::new(Q, 4, vec![se(1, 3, a.clone())]).unwrap();
        assert_eq!(w.invert().gens, vec![se(1, 3, -a.clone())]);

        let lin = GeneratorWord::new(
            Q,
            3,
            vec![Generator::LinE { i: 1, j: 2, a: a.clone() }, Generator::LinE { i: 1, j: 2, a: -a }],
        )
        .unwrap();
        assert!(lin.simplify().is_empty());
    }

    #[test]
    fn simplify_preserves_evaluation() {
        let mut rng = rng_from_seed(11);
        for ring in [Q, RingSpec::PolynomialOverPrimeField(5)] {
            for _ in 0..100 {
                let w = random_se_word(ring, 2, 12, &mut rng);
                // duplicate some generators so merges actually happen
                let mut gens = Vec::new();
                for g in &w.gens {
                    gens.push(g.clone());
                    if let Generator::SymSE { i, j, .. } = g {
                        gens.push(se(*i, *j, random_element(ring, &mut rng)));
                    }
                }
                let w = GeneratorWord::new(ring, 4, gens).unwrap();
                let s = w.simplify();
                assert!(s.len() <= w.len());
                assert_eq!(s.eval(&forms()).unwrap(), w.eval(&forms()).unwrap());
            }
        }
    }

    #[test]
    fn conjugate_generators() {
        let f5 = RingSpec::PolynomialOverPrimeField(5);
        let x = f5.variable().unwrap();
        let r = f5.from_i64(3);
        let a = f5.poly(&[1, 2]).unwrap();
        let outer = GeneratorWord::new(f5, 4, vec![se(2, 3, r.clone())]).unwrap();
        let g = Generator::conj(outer.clone(), se(2, 1, &a * &x));
        let w = GeneratorWord::new(f5, 4, vec![g]).unwrap();
        let ideal = IdealSpec::new(x.clone());
        assert!(w.word_in_ideal(&ideal).unwrap());
        let expected = outer
            .eval(&forms())
            .unwrap()
            .checked_mul(&GeneratorWord::new(f5, 4, vec![se(2, 1, &a * &x)]).unwrap().eval(&forms()).unwrap())
            .unwrap()
            .checked_mul(&outer.invert().eval(&forms()).unwrap())
            .unwrap();
        assert_eq!(w.eval(&forms()).unwrap(), expected);
        assert_eq!(w.eval_by_products(&forms()).unwrap(), expected);

        let bare = GeneratorWord::new(f5, 4, vec![se(2, 1, f5.one())]).unwrap();
        assert!(!bare.word_in_ideal(&ideal).unwrap());
    }

    #[test]
    fn vaserstein_generators_evaluate_through_registry() {
        let psi = SkewForm::standard(Q, 2);
        let mut reg = FormRegistry::new();
        reg.insert("phi0", &psi).unwrap();
        let v = vec![Q.from_i64(1), Q.zero(), Q.zero()];
        let w = GeneratorWord::new(Q, 4, vec![Generator::VasC { form: "phi0".into(), v }]).unwrap();
        let expected = GeneratorWord::new(Q, 4, vec![se(2, 1, Q.one())]).unwrap();
        assert_eq!(w.eval(&reg).unwrap(), expected.eval(&reg).unwrap());
        let missing = GeneratorWord::new(Q, 4, vec![Generator::VasC { form: "nope".into(), v: vec![Q.one(); 3] }]);
        assert!(matches!(missing.unwrap().eval(&reg), Err(Error::UnknownForm(_))));
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(GeneratorWord::new(Q, 4, vec![se(2, 2, Q.one())]).is_err());
        assert!(GeneratorWord::new(Q, 4, vec![se(1, 5, Q.one())]).is_err());
        assert!(GeneratorWord::new(Q, 3, vec![se(1, 2, Q.one())]).is_err());
        let z = RingSpec::Integers;
        assert!(GeneratorWord::new(Q, 4, vec![se(1, 2, z.one())]).is_err());
    }

    #[test]
    fn json_shape() {
        let w = GeneratorWord::new(Q, 4, vec![se(1, 3, Q.rational(-5, 8).unwrap())]).unwrap();
        assert_eq!(
            w.to_json(),
            json!({"ring": "QQ", "n": 2, "gens": [{"t": "se", "i": 1, "j": 3, "a": "-5/8"}]})
        );
        let lin = GeneratorWord::new(Q, 3, vec![Generator::LinE { i: 3, j: 1, a: Q.one() }]).unwrap();
        assert_eq!(lin.to_json()["dim"], json!(3));
        assert_eq!(GeneratorWord::from_json(&lin.to_json()).unwrap(), lin);
    }
}
