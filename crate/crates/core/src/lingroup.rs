//! Elementary linear group algorithms: unimodular vectors to `e_1` and row
//! transvections, both as `E_{ij}` words.

use crate::error::{Error, Result};
use crate::rings::{RingElement, RingSpec};
use crate::words::{Generator, GeneratorWord};

/// A vector whose entries generate the unit ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct UnimodularVector {
    entries: Vec<RingElement>,
}

impl UnimodularVector {
    /// Checks unimodularity through the gcd of the entries.
    pub fn new(entries: Vec<RingElement>) -> Result<Self> {
        let ring = ring_of(&entries)?;
        let mut g = ring.zero();
        for x in entries.iter().filter(|x| !x.is_zero()) {
            g = g.gcd_ext(x)?.0;
        }
        if !g.is_unit() {
            return Err(Error::NotUnimodular(format!("gcd {g}")));
        }
        Ok(UnimodularVector { entries })
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn ring(&self) -> RingSpec {
        self.entries[0].ring()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn ring_of(entries: &[RingElement]) -> Result<RingSpec> {
    let ring = entries.first().ok_or_else(|| Error::Dimension("empty vector".into()))?.ring();
    if let Some(x) = entries.iter().find(|x| x.ring() != ring) {
        return Err(Error::RingMismatch(ring, x.ring()));
    }
    Ok(ring)
}

struct ColumnOps {
    a: Vec<RingElement>,
    word: GeneratorWord,
}

impl ColumnOps {
    /// `a^t ↦ a^t · E_{ij}(t)`, i.e. `a_j += t a_i`.
    fn apply(&mut self, i: usize, j: usize, t: RingElement) {
        if t.is_zero() {
            return;
        }
        self.a[j] = &self.a[j] + &(&t * &self.a[i]);
        self.word.push(Generator::LinE { i: i + 1, j: j + 1, a: t });
    }
}

/// Returns an `E_n(R)` word `β` with `a^t β = e_1^t`.
///
/// Euclidean descent on the entries (the pivot is the entry of least norm),
/// then the surviving unit is moved to the first slot and normalized to 1.
/// A non-unit final gcd means `a` is not unimodular.
pub fn um_to_e1(a: &[RingElement]) -> Result<GeneratorWord> {
    let ring = ring_of(a)?;
    let n = a.len();
    if n < 2 {
        return Err(Error::Dimension("um_to_e1 needs n >= 2".into()));
    }
    let mut ops = ColumnOps { a: a.to_vec(), word: GeneratorWord::empty(ring, n) };
    let pivot = loop {
        let nonzero: Vec<usize> = (0..n).filter(|&k| !ops.a[k].is_zero()).collect();
        let Some(&p) = nonzero.iter().min_by_key(|&&k| ops.a[k].euclidean_norm()) else {
            return Err(Error::NotUnimodular("zero vector".into()));
        };
        if nonzero.len() == 1 {
            break p;
        }
        for &k in nonzero.iter().filter(|&&k| k != p) {
            let (q, _) = ops.a[k].div_rem(&ops.a[p])?;
            ops.apply(p, k, -q);
        }
    };
    let g = ops.a[pivot].clone();
    if !g.is_unit() {
        return Err(Error::NotUnimodular(format!("gcd {g}")));
    }
    if pivot != 0 {
        ops.apply(pivot, 0, ring.one());
        ops.apply(0, pivot, -ring.one());
    }
    if !g.is_one() {
        // (g, 0) → (g, 1) → (1, 1) → (1, 0)
        ops.apply(0, 1, g.invert_unit()?);
        ops.apply(1, 0, &ring.one() - &g);
        ops.apply(0, 1, -ring.one());
    }
    debug_assert!(ops.a[0].is_one() && ops.a[1..].iter().all(RingElement::is_zero));
    Ok(ops.word)
}

/// `I_n + Σ_{j≠i} t_j e_{ij}` as commuting `E_{ij}(t_j)` factors. `t[i-1]` is ignored.
pub fn row_transvection_word(i: usize, t: &[RingElement], n: usize) -> Result<GeneratorWord> {
    if i == 0 || i > n {
        return Err(Error::Index(format!("row {i} in dimension {n}")));
    }
    if t.len() != n {
        return Err(Error::Dimension(format!("{} entries for dimension {n}", t.len())));
    }
    let ring = ring_of(t)?;
    let gens = t
        .iter()
        .enumerate()
        .filter(|&(j, x)| j + 1 != i && !x.is_zero())
        .map(|(j, x)| Generator::LinE { i, j: j + 1, a: x.clone() })
        .collect();
    Ok(GeneratorWord { ring, dim: n, gens })
}
