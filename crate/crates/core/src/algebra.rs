//! Finite graded-commutative monomial algebras over `F_p`.
//!
//! Every algebra here is a tensor product of truncated polynomial and
//! exterior factors: generators `x_i` subject only to `x_i^{h_i} = 0`.
//! Elements are sparse sums of monomials stored in generator order; the
//! Koszul sign of reordering odd-degree factors is folded into the
//! coefficient.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fp::Prime;

/// Nilpotency height: least power of a generator that vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    /// Largest admissible exponent, if bounded.
    pub fn max_exponent(self) -> Option<u32> {
        match self {
            Height::Finite(h) => Some(h - 1),
            Height::Infinite => None,
        }
    }

    pub fn admits(self, e: u32) -> bool {
        match self {
            Height::Finite(h) => e < h,
            Height::Infinite => true,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub height: Height,
    /// Filtration weight; 1 unless the class is known to sit deeper.
    pub weight: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32, height: Height) -> Self {
        GeneratorSpec { name: name.into(), degree, height, weight: 1 }
    }

    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, degree, Height::Finite(2))
    }

    pub fn truncated(name: impl Into<String>, degree: u32, height: u32) -> Self {
        Self::new(name, degree, Height::Finite(height))
    }

    pub fn polynomial(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, degree, Height::Infinite)
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }
}

/// Exponent vector indexed by the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors, counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Sparse linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial, coeff: u32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(m, coeff);
        }
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Adds `coeff * m` in place.
    pub fn add_term(&mut self, p: Prime, m: Monomial, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if coeff % p.value() != 0 {
                    v.insert(coeff % p.value());
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), coeff % p.value());
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, p: Prime, other: &Element) {
        for (m, c) in other.terms() {
            self.add_term(p, m.clone(), c);
        }
    }

    pub fn scaled(&self, p: Prime, f: u32) -> Element {
        let mut out = Element::zero();
        for (m, c) in self.terms() {
            out.add_term(p, m.clone(), p.mul(c, f));
        }
        out
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }
}

/// A finite (or, for spectral-sequence pages, possibly infinite)
/// graded-commutative monomial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    prime: Prime,
    generators: Vec<GeneratorSpec>,
}

impl AlgebraPresentation {
    pub fn new(prime: Prime, generators: Vec<GeneratorSpec>) -> Result<Self, Error> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidPresentation(format!("{} has degree 0", g.name)));
            }
            if g.weight == 0 {
                return Err(Error::InvalidPresentation(format!("{} has weight 0", g.name)));
            }
            if let Height::Finite(h) = g.height {
                if h < 2 {
                    return Err(Error::InvalidPresentation(format!("{} has height {h}", g.name)));
                }
            }
            if !prime.is_two() && g.degree % 2 == 1 && g.height != Height::Finite(2) {
                return Err(Error::InvalidPresentation(format!(
                    "{} has odd degree at p = {prime} and must be exterior",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(AlgebraPresentation { prime, generators })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, name: &str) -> Result<&GeneratorSpec, Error> {
        self.generators.iter().find(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn is_finite(&self) -> bool {
        self.generators.iter().all(|g| g.height != Height::Infinite)
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.generators.len())
    }

    pub fn generator_monomial(&self, name: &str) -> Result<Monomial, Error> {
        let i = self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Monomial::generator(self.generators.len(), i))
    }

    /// Monomial from `(name, exponent)` pairs; repeated names add up.
    pub fn monomial_from(&self, factors: &[(&str, u32)]) -> Result<Monomial, Error> {
        let mut e = vec![0; self.generators.len()];
        for &(name, k) in factors {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            e[i] += k;
        }
        Ok(Monomial(e))
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.degree).sum()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.weight).sum()
    }

    /// True iff every exponent is below its generator's height.
    pub fn is_nonzero(&self, m: &Monomial) -> bool {
        m.0.len() == self.generators.len() && m.0.iter().zip(&self.generators).all(|(&e, g)| g.height.admits(e))
    }

    pub fn element_degree(&self, e: &Element) -> Option<u32> {
        let mut degs = e.monomials().map(|m| self.degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn check(&self, e: &Element) -> Result<(), Error> {
        if e.monomials().all(|m| self.is_nonzero(m)) {
            Ok(())
        } else {
            Err(Error::MismatchedPresentation)
        }
    }

    /// Product of two canonical monomials: `None` if it vanishes by
    /// truncation, otherwise the canonical monomial and the Koszul sign
    /// (true = negative).
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let n = self.generators.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let e = a.0[i] + b.0[i];
            if !self.generators[i].height.admits(e) {
                return None;
            }
            out.push(e);
        }
        if self.prime.is_two() {
            return Some((Monomial(out), false));
        }
        // moving each odd factor of b left past the odd factors of a with a
        // larger generator index
        let mut odd_in_a_after = 0u32;
        let mut negative = false;
        for i in (0..n).rev() {
            if self.generators[i].degree % 2 == 1 {
                if b.0[i] % 2 == 1 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                odd_in_a_after += a.0[i];
            }
        }
        Some((Monomial(out), negative))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.multiply_unchecked(a, b))
    }

    pub(crate) fn multiply_unchecked(&self, a: &Element, b: &Element) -> Element {
        let p = self.prime;
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, neg)) = self.multiply_monomials(ma, mb) {
                    let c = p.mul(p.mul(ca, cb), p.sign(neg));
                    out.add_term(p, m, c);
                }
            }
        }
        out
    }

    /// All canonical monomials of internal degree `d`, in lexicographic
    /// exponent order.
    pub fn basis_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0; self.generators.len()];
        self.enumerate(0, d, &mut current, &mut out);
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let mut cap = remaining / g.degree;
        if let Some(max) = g.height.max_exponent() {
            cap = cap.min(max);
        }
        for e in 0..=cap {
            current[i] = e;
            self.enumerate(i + 1, remaining - e * g.degree, current, out);
        }
        current[i] = 0;
    }

    /// Every nonzero monomial. Requires finite heights.
    pub fn all_monomials(&self) -> Result<Vec<Monomial>, Error> {
        let maxes = self
            .generators
            .iter()
            .map(|g| g.height.max_exponent().ok_or_else(|| Error::InfiniteHeight(g.name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = vec![Monomial(Vec::new())];
        for max in maxes {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=max).map(move |e| {
                        let mut v = m.0.clone();
                        v.push(e);
                        Monomial(v)
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Monomial with every exponent at its maximum.
    pub fn top_monomial(&self) -> Result<Monomial, Error> {
        self.generators
            .iter()
            .map(|g| g.height.max_exponent().ok_or_else(|| Error::InfiniteHeight(g.name.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    pub fn top_degree(&self) -> Result<u32, Error> {
        self.top_monomial().map(|m| self.degree(&m))
    }

    /// Dimensions of the graded pieces in degrees `0..=n`.
    pub fn poincare_dims(&self, n: u32) -> Vec<usize> {
        let n = n as usize;
        let mut dims = vec![0usize; n + 1];
        dims[0] = 1;
        for g in &self.generators {
            let d = g.degree as usize;
            let max = g.height.max_exponent().map(|m| m as usize).unwrap_or(usize::MAX);
            let mut next = vec![0usize; n + 1];
            for (deg, &count) in dims.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let mut e = 0usize;
                while e <= max && deg + e * d <= n {
                    next[deg + e * d] += count;
                    e += 1;
                }
            }
            dims = next;
        }
        dims
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        m.0.iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .map(|(m, c)| {
                let mono = self.format_monomial(m);
                if c == 1 {
                    mono
                } else {
                    format!("{c} {mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2_mod2() -> AlgebraPresentation {
        AlgebraPresentation::new(
            Prime::TWO,
            vec![GeneratorSpec::truncated("x3", 3, 4), GeneratorSpec::exterior("x5", 5)],
        )
        .unwrap()
    }

    #[test]
    fn truncation_kills() {
        let a = AlgebraPresentation::new(Prime::TWO, vec![GeneratorSpec::truncated("x3", 3, 4)]).unwrap();
        let sq = Element::monomial(a.monomial_from(&[("x3", 2)]).unwrap());
        assert!(a.multiply(&sq, &sq).unwrap().is_zero());
    }

    #[test]
    fn koszul_sign_odd_prime() {
        let a = AlgebraPresentation::new(
            Prime::THREE,
            vec![GeneratorSpec::exterior("x3", 3), GeneratorSpec::exterior("x7", 7)],
        )
        .unwrap();
        let x3 = Element::monomial(a.generator_monomial("x3").unwrap());
        let x7 = Element::monomial(a.generator_monomial("x7").unwrap());
        let both = a.monomial_from(&[("x3", 1), ("x7", 1)]).unwrap();
        assert_eq!(a.multiply(&x3, &x7).unwrap(), Element::term(both.clone(), 1));
        assert_eq!(a.multiply(&x7, &x3).unwrap(), Element::term(both, 2));
        assert!(a.multiply(&x3, &x3).unwrap().is_zero());
    }

    #[test]
    fn nonzero_product_in_g2() {
        let a = g2_mod2();
        let x3c = Element::monomial(a.monomial_from(&[("x3", 3)]).unwrap());
        let x5 = Element::monomial(a.generator_monomial("x5").unwrap());
        let prod = a.multiply(&x3c, &x5).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(a.element_degree(&prod), Some(14));
    }

    #[test]
    fn mismatched_presentation() {
        let a = g2_mod2();
        let bogus = Element::monomial(Monomial(vec![1]));
        assert!(matches!(a.multiply(&bogus, &bogus), Err(Error::MismatchedPresentation)));
    }

    #[test]
    fn odd_generator_must_be_exterior_at_odd_p() {
        let r = AlgebraPresentation::new(Prime::THREE, vec![GeneratorSpec::truncated("x3", 3, 3)]);
        assert!(r.is_err());
        let dup = AlgebraPresentation::new(
            Prime::TWO,
            vec![GeneratorSpec::exterior("x3", 3), GeneratorSpec::exterior("x3", 5)],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn dims_and_top_degree() {
        let a = g2_mod2();
        assert_eq!(a.top_degree().unwrap(), 14);
        let dims = a.poincare_dims(20);
        assert_eq!(dims.iter().sum::<usize>(), 8);
        assert_eq!(dims[0], 1);
        assert_eq!(a.basis_of_degree(0), vec![a.unit()]);
        let inf = AlgebraPresentation::new(Prime::TWO, vec![GeneratorSpec::polynomial("x3", 3)]).unwrap();
        assert!(matches!(inf.top_degree(), Err(Error::InfiniteHeight(_))));
        assert_eq!(inf.basis_of_degree(9).len(), 1);
    }

    #[test]
    fn format() {
        let a = g2_mod2();
        let m = a.monomial_from(&[("x3", 3), ("x5", 1)]).unwrap();
        assert_eq!(a.format_monomial(&m), "x3^3 x5");
        assert_eq!(a.format_monomial(&a.unit()), "1");
    }
}
