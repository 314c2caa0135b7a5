//! Sparse linear combinations over PBW monomials and their tensor powers.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::algebra::Generator;
use crate::scalar::Scalar;

/// An ordered product `g₁^k₁ ⋯ gₙ^kₙ` with `g₁ < ⋯ < gₙ` in PBW order and
/// every `kᵢ ≥ 1`. The empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn power(g: Generator, k: u32) -> Self {
        if k == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, k)])
        }
    }

    /// Builds a monomial from factors that already respect the PBW order.
    /// Returns `None` when the order or the exponent invariant is violated.
    pub fn from_sorted(factors: Vec<(Generator, u32)>) -> Option<Self> {
        let ordered = factors.windows(2).all(|w| w[0].0 < w[1].0);
        if ordered && factors.iter().all(|(_, k)| *k >= 1) {
            Some(Monomial(factors))
        } else {
            None
        }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// PBW length: the sum of exponents.
    pub fn len(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The factors as a flat word, `g^k` spelled out `k` times.
    pub fn word(&self) -> Vec<Generator> {
        self.0
            .iter()
            .flat_map(|(g, k)| std::iter::repeat_n(g.clone(), *k as usize))
            .collect()
    }

    pub fn last(&self) -> Option<&(Generator, u32)> {
        self.0.last()
    }

    /// Removes one power of the largest factor.
    pub(crate) fn pop_one(&self) -> (Monomial, Generator) {
        let mut f = self.0.clone();
        let (g, k) = f.pop().expect("pop_one on unit monomial");
        if k > 1 {
            f.push((g.clone(), k - 1));
        }
        (Monomial(f), g)
    }

    /// Appends `g`, which must be `>=` the largest factor.
    pub(crate) fn push_max(&self, g: &Generator) -> Monomial {
        let mut f = self.0.clone();
        match f.last_mut() {
            Some((last, k)) if last == g => *k += 1,
            Some((last, _)) => {
                debug_assert!(*last < *g);
                f.push((g.clone(), 1));
            }
            None => f.push((g.clone(), 1)),
        }
        Monomial(f)
    }

    /// Sum of generator degrees, counted with multiplicity.
    pub fn grade(&self) -> Scalar {
        self.0
            .iter()
            .map(|(g, k)| g.degree() * Scalar::from_integer((*k).into()))
            .fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Graded reverse-lexicographic order: shorter monomials first; on equal
/// length, the monomial with the larger exponent on the largest differing
/// generator comes first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        let mut a = self.0.iter().rev().peekable();
        let mut b = other.0.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((ga, ka)), Some((gb, kb))) => match ga.cmp(gb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => match ka.cmp(kb) {
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis keys of the spaces we compute in: `U`, `U⊗U`, `U⊗U⊗U`.
pub trait Basis: Clone + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync {
    const LEGS: usize;

    fn unit() -> Self;

    fn legs(&self) -> &[Monomial];

    /// Inverse of [`Basis::legs`]; `legs.len()` must equal `LEGS`.
    fn from_legs(legs: Vec<Monomial>) -> Self;
}

impl Basis for Monomial {
    const LEGS: usize = 1;

    fn unit() -> Self {
        Monomial::one()
    }

    fn legs(&self) -> &[Monomial] {
        std::slice::from_ref(self)
    }

    fn from_legs(mut legs: Vec<Monomial>) -> Self {
        debug_assert_eq!(legs.len(), 1);
        legs.pop().expect("one leg")
    }
}

impl<const K: usize> Basis for [Monomial; K] {
    const LEGS: usize = K;

    fn unit() -> Self {
        std::array::from_fn(|_| Monomial::one())
    }

    fn legs(&self) -> &[Monomial] {
        self
    }

    fn from_legs(legs: Vec<Monomial>) -> Self {
        legs.try_into().expect("leg count matches tensor arity")
    }
}

/// Finite linear combination with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<K: Basis> {
    terms: BTreeMap<K, Scalar>,
}

pub type Element = Combination<Monomial>;
pub type Tensor2 = Combination<[Monomial; 2]>;
pub type Tensor3 = Combination<[Monomial; 3]>;

impl<K: Basis> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Basis> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(K::unit(), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(K::unit(), c)
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the unit key.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&K::unit())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn map_keys<J: Basis>(&self, mut f: impl FnMut(&K) -> J) -> Combination<J> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Applies a linear map defined on basis keys.
    pub fn map_linear<J: Basis>(&self, mut f: impl FnMut(&K) -> Combination<J>) -> Combination<J> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Largest PBW length over all legs of all keys.
    pub fn max_leg_len(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.legs().iter().map(Monomial::len))
            .max()
            .unwrap_or(0)
    }
}

impl Element {
    pub fn generator(g: Generator) -> Self {
        Self::term(Monomial::generator(g), Scalar::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }
}

impl<K: Basis> FromIterator<(K, Scalar)> for Combination<K> {
    fn from_iter<T: IntoIterator<Item = (K, Scalar)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Basis> AddAssign<&Combination<K>> for Combination<K> {
    fn add_assign(&mut self, rhs: &Combination<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Basis> SubAssign<&Combination<K>> for Combination<K> {
    fn sub_assign(&mut self, rhs: &Combination<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Basis> Add for Combination<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Basis> Add<&Combination<K>> for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Basis> Sub for Combination<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Basis> Sub<&Combination<K>> for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Basis> Neg for Combination<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Combination {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<K: Basis> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        -(self.clone())
    }
}

/// `x ⊗ y`.
pub fn tensor2(x: &Element, y: &Element) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term([a.clone(), b.clone()], ca * cb);
        }
    }
    out
}

/// `x ⊗ y ⊗ z`.
pub fn tensor3(x: &Element, y: &Element, z: &Element) -> Tensor3 {
    let mut out = Tensor3::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let cab = ca * cb;
            for (c, cc) in z.iter() {
                out.add_term([a.clone(), b.clone(), c.clone()], &cab * cc);
            }
        }
    }
    out
}

/// Places `x` in leg `position` (0-based) of a `K`-fold tensor, with units
/// elsewhere.
pub fn leg_embed<const K: usize>(x: &Element, position: usize) -> Combination<[Monomial; K]> {
    assert!(position < K, "leg {position} out of range for arity {K}");
    x.map_keys(|m| {
        let mut key: [Monomial; K] = Basis::unit();
        key[position] = m.clone();
        key
    })
}

/// The flip `a⊗b ↦ b⊗a`.
pub fn flip(t: &Tensor2) -> Tensor2 {
    t.map_keys(|[a, b]| [b.clone(), a.clone()])
}
