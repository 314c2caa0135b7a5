//! Power series in `t` truncated after degree `N`, with coefficients in `U`,
//! `U⊗U` or `U⊗U⊗U`.

use crate::combination::{Basis, Combination, Monomial};
use crate::enveloping::Algebra;
use crate::scalar::Scalar;

/// `Σ_{r=0}^{N} c_r t^r`; always holds exactly `N + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<K: Basis> {
    coeffs: Vec<Combination<K>>,
}

pub type ElementSeries = Series<Monomial>;
pub type Tensor2Series = Series<[Monomial; 2]>;
pub type Tensor3Series = Series<[Monomial; 3]>;

impl<K: Basis> Series<K> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Combination::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Combination::one(), order)
    }

    pub fn constant(x: Combination<K>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = x;
        s
    }

    /// Pads with zeros or truncates so the result has order `order`.
    pub fn from_coeffs(mut coeffs: Vec<Combination<K>>, order: usize) -> Self {
        coeffs.resize(order + 1, Combination::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &Combination<K> {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[Combination<K>] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, r: usize, x: Combination<K>) {
        if r < self.coeffs.len() {
            self.coeffs[r] = x;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Combination::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for r in 0..=n {
            if r + k <= n {
                out.coeffs[r + k] = self.coeffs[r].clone();
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn map<J: Basis>(&self, f: impl FnMut(&Combination<K>) -> Combination<J>) -> Series<J> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Applies a linear map whose value on each basis key is itself a series;
    /// degrees add and anything beyond the order is discarded.
    pub fn map_series<J: Basis>(&self, mut f: impl FnMut(&K) -> Series<J>) -> Series<J> {
        let n = self.order();
        let mut out = Series::zero(n);
        for (r, c) in self.coeffs.iter().enumerate() {
            for (key, coeff) in c.iter() {
                let image = f(key);
                for s in 0..=(n - r).min(image.order()) {
                    out.coeffs[r + s].add_scaled(&image.coeffs[s], coeff);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|r| &self.coeffs[r] + &other.coeffs[r]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|r| &self.coeffs[r] - &other.coeffs[r]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    /// Cauchy product in the given algebra.
    pub fn mul(&self, alg: &Algebra, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Combination::zero(); n + 1];
        for (r, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (s, b) in other.coeffs.iter().enumerate().take(n + 1 - r) {
                if b.is_zero() {
                    continue;
                }
                coeffs[r + s] += &alg.tmul(a, b);
            }
        }
        Series { coeffs }
    }

    /// Product of a sequence of series, left to right.
    pub fn product<'a>(alg: &Algebra, order: usize, factors: impl IntoIterator<Item = &'a Self>) -> Self
    where
        K: 'a,
    {
        factors
            .into_iter()
            .fold(Self::one(order), |acc, f| acc.mul(alg, f))
    }

    pub fn pow(&self, alg: &Algebra, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(alg, self);
        }
        acc
    }

    /// First degree where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&r| self.coeffs[r] != other.coeffs[r])
    }
}

impl<K: Basis> Series<K> {
    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn leading(&self) -> &Combination<K> {
        &self.coeffs[0]
    }
}

impl<K: Basis> Default for Series<K> {
    fn default() -> Self {
        Self::zero(0)
    }
}
