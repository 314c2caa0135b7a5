//! PBW arithmetic in the universal enveloping algebra, its tensor powers, and
//! the primitive Hopf structure `Δ₀(X) = X⊗1 + 1⊗X`, `S₀(X) = -X`, `ε(X) = 0`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::algebra::{AlgebraMode, BracketTable, GenCombination, Generator, StandardBracket};
use crate::combination::{Basis, Combination, Element, Monomial, Tensor2, Tensor3};
use crate::error::{AlgebraError, Result};
use crate::scalar::{binomial, sign, Scalar};

/// Multiplication context for `U(𝔏)` or `U(𝔏̄)`.
///
/// Holds the bracket table and a memo of `monomial · generator` products.
/// The memo is behind a mutex and never changes results, so one `Algebra`
/// can be shared across threads.
pub struct Algebra {
    mode: AlgebraMode,
    table: Arc<dyn BracketTable>,
    cache: Mutex<HashMap<(Monomial, Generator), Element>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("mode", &self.mode).finish_non_exhaustive()
    }
}

impl Algebra {
    pub fn new(mode: AlgebraMode) -> Self {
        Self::with_table(mode, Arc::new(StandardBracket))
    }

    pub fn with_table(mode: AlgebraMode, table: Arc<dyn BracketTable>) -> Self {
        Algebra {
            mode,
            table,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    pub fn table(&self) -> Arc<dyn BracketTable> {
        Arc::clone(&self.table)
    }

    fn raw_bracket(&self, g: &Generator, h: &Generator) -> GenCombination {
        self.table.bracket(g, h, self.mode)
    }

    /// `[g, h]` as a degree-one element.
    pub fn bracket(&self, g: &Generator, h: &Generator) -> Result<Element> {
        g.check_mode(self.mode)?;
        h.check_mode(self.mode)?;
        Ok(gen_combination(self.raw_bracket(g, h)))
    }

    /// `Element::generator(g)` after checking that `g` exists in this mode.
    pub fn gen(&self, g: Generator) -> Result<Element> {
        g.check_mode(self.mode)?;
        Ok(Element::generator(g))
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        for (m, _) in x.iter() {
            for (g, _) in m.factors() {
                g.check_mode(self.mode)?;
            }
        }
        Ok(())
    }

    /// PBW normal form of the product of `word`.
    pub fn normal_form(&self, word: &[Generator]) -> Result<Element> {
        for g in word {
            g.check_mode(self.mode)?;
        }
        let mut acc = Element::one();
        for g in word {
            acc = self.mul_element_gen(&acc, g);
        }
        Ok(acc)
    }

    fn mul_element_gen(&self, x: &Element, g: &Generator) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.mul_monomial_gen(m, g), c);
        }
        out
    }

    /// `m · g`, straightened. If `g` is below the largest factor `z` of
    /// `m = m'·z` we rewrite `m'·z·g = (m'·g)·z + m'·[z, g]`; the length of
    /// every recursive left operand drops except for the leading term of
    /// `m'·g`, which is already ordered against `z`.
    fn mul_monomial_gen(&self, m: &Monomial, g: &Generator) -> Element {
        match m.last() {
            None => return Element::generator(g.clone()),
            Some((z, _)) if z <= g => return Element::monomial(m.push_max(g)),
            _ => {}
        }
        let key = (m.clone(), g.clone());
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let (rest, z) = m.pop_one();
        let left = self.mul_monomial_gen(&rest, g);
        let mut out = self.mul_element_gen(&left, &z);
        for (h, c) in self.raw_bracket(&z, g) {
            out.add_scaled(&self.mul_monomial_gen(&rest, &h), &c);
        }
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, out.clone());
        out
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        if b.is_one() {
            return Element::monomial(a.clone());
        }
        let mut acc = Element::monomial(a.clone());
        for g in b.word() {
            acc = self.mul_element_gen(&acc, &g);
        }
        acc
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.tmul(x, y)
    }

    /// Product in `U^{⊗k}`: legs multiply independently.
    pub fn mul_basis<K: Basis>(&self, a: &K, b: &K) -> Combination<K> {
        let products: Vec<Element> = a
            .legs()
            .iter()
            .zip(b.legs())
            .map(|(x, y)| self.mul_monomials(x, y))
            .collect();
        outer(&products)
    }

    pub fn tmul<K: Basis>(&self, x: &Combination<K>, y: &Combination<K>) -> Combination<K> {
        let mut out = Combination::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.mul_basis(a, b), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, x: &Element, k: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `xy - yx` in `U^{⊗k}`.
    pub fn commutator<K: Basis>(&self, x: &Combination<K>, y: &Combination<K>) -> Combination<K> {
        self.tmul(x, y) - self.tmul(y, x)
    }

    /// `(ad y)^k (x)`.
    pub fn ad_power(&self, y: &Element, k: u32, x: &Element) -> Element {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = self.commutator(y, &acc);
        }
        acc
    }

    /// Lie bracket of two degree-one elements via the structure constants.
    pub fn lie_bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        let xs = degree_one_terms(x)?;
        let ys = degree_one_terms(y)?;
        let mut out = Element::zero();
        for (g, cg) in &xs {
            g.check_mode(self.mode)?;
            for (h, ch) in &ys {
                h.check_mode(self.mode)?;
                out.add_scaled(&gen_combination(self.raw_bracket(g, h)), &(cg * ch));
            }
        }
        Ok(out)
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`; zero for a Lie algebra.
    pub fn jacobiator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let a = self.lie_bracket(x, &self.lie_bracket(y, z)?)?;
        let b = self.lie_bracket(y, &self.lie_bracket(z, x)?)?;
        let c = self.lie_bracket(z, &self.lie_bracket(x, y)?)?;
        Ok(a + b + c)
    }

    /// `Δ₀`, extended multiplicatively. Sub-words of a PBW-ordered word are
    /// PBW-ordered, so no straightening is required.
    pub fn coproduct0(&self, x: &Element) -> Tensor2 {
        x.map_linear(coproduct0_monomial)
    }

    /// `S₀`, extended anti-multiplicatively: `S₀(g₁⋯gₖ) = (-1)^k gₖ⋯g₁`.
    pub fn antipode0(&self, x: &Element) -> Element {
        x.map_linear(|m| {
            let mut word = m.word();
            word.reverse();
            let mut acc = Element::one();
            for g in &word {
                acc = self.mul_element_gen(&acc, g);
            }
            acc.scale(&sign(m.len()))
        })
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        x.constant_term()
    }

    /// Applies `f` to leg `leg` (0-based) of a two-fold tensor.
    pub fn apply_leg(&self, f: impl Fn(&Element) -> Tensor2, t: &Tensor2, leg: usize) -> Tensor3 {
        assert!(leg < 2);
        let mut out = Tensor3::zero();
        for ([a, b], c) in t.iter() {
            let image = if leg == 0 {
                f(&Element::monomial(a.clone()))
            } else {
                f(&Element::monomial(b.clone()))
            };
            for ([x, y], d) in image.iter() {
                let key = if leg == 0 {
                    [x.clone(), y.clone(), b.clone()]
                } else {
                    [a.clone(), x.clone(), y.clone()]
                };
                out.add_term(key, c * d);
            }
        }
        out
    }

    /// The multiplication map `m: U⊗U → U`.
    pub fn multiply_legs(&self, t: &Tensor2) -> Element {
        t.map_linear(|[a, b]| self.mul_monomials(a, b))
    }

    /// Applies a linear map `U → U` to one leg of a two-fold tensor.
    pub fn map_leg(&self, f: impl Fn(&Element) -> Element, t: &Tensor2, leg: usize) -> Tensor2 {
        assert!(leg < 2);
        t.map_linear(|[a, b]| {
            if leg == 0 {
                crate::combination::tensor2(&f(&Element::monomial(a.clone())), &Element::monomial(b.clone()))
            } else {
                crate::combination::tensor2(&Element::monomial(a.clone()), &f(&Element::monomial(b.clone())))
            }
        })
    }

    /// `(ε⊗Id)` for `leg == 0`, `(Id⊗ε)` for `leg == 1`.
    pub fn counit_leg(&self, t: &Tensor2, leg: usize) -> Element {
        assert!(leg < 2);
        let mut out = Element::zero();
        for ([a, b], c) in t.iter() {
            let (killed, kept) = if leg == 0 { (a, b) } else { (b, a) };
            if killed.is_one() {
                out.add_term(kept.clone(), c.clone());
            }
        }
        out
    }
}

fn gen_combination(v: GenCombination) -> Element {
    v.into_iter()
        .map(|(g, c)| (Monomial::generator(g), c))
        .collect()
}

fn degree_one_terms(x: &Element) -> Result<Vec<(Generator, Scalar)>> {
    x.iter()
        .map(|(m, c)| match m.factors() {
            [(g, 1)] => Ok((g.clone(), c.clone())),
            _ => Err(AlgebraError::Domain(format!(
                "expected a linear combination of generators, found monomial of length {}",
                m.len()
            ))),
        })
        .collect()
}

type Factors = Vec<(Generator, u32)>;

fn coproduct0_monomial(m: &Monomial) -> Tensor2 {
    // splits[i] = (left, right, coefficient) after the first i factors
    let mut splits: Vec<(Factors, Factors, Scalar)> =
        vec![(Vec::new(), Vec::new(), Scalar::one())];
    for (g, k) in m.factors() {
        let mut next = Vec::with_capacity(splits.len() * (*k as usize + 1));
        for (l, r, c) in &splits {
            for j in 0..=*k {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                if j > 0 {
                    l2.push((g.clone(), j));
                }
                if j < *k {
                    r2.push((g.clone(), k - j));
                }
                next.push((l2, r2, c * binomial(*k, j)));
            }
        }
        splits = next;
    }
    splits
        .into_iter()
        .map(|(l, r, c)| {
            let l = Monomial::from_sorted(l).expect("sub-word of an ordered word");
            let r = Monomial::from_sorted(r).expect("sub-word of an ordered word");
            ([l, r], c)
        })
        .collect()
}

/// Outer product of per-leg elements into a `K`-fold tensor.
fn outer<K: Basis>(legs: &[Element]) -> Combination<K> {
    let mut partial: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for leg in legs {
        if leg.is_zero() {
            return Combination::zero();
        }
        let mut next = Vec::with_capacity(partial.len() * leg.len());
        for (keys, c) in &partial {
            for (m, d) in leg.iter() {
                let mut k = keys.clone();
                k.push(m.clone());
                next.push((k, c * d));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(k, c)| (K::from_legs(k), c))
        .collect()
}
