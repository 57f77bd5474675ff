//! Connected coalgebras built from exterior, truncated polynomial and
//! divided power cofactors.
//!
//! Basis elements are exponent vectors ([`Monomial`]) over the cofactors:
//! exponent `n` on a divided power cofactor stands for `γ_n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, GeneratorSpec, Height, Monomial};
use crate::error::Error;
use crate::fp::Prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum CofactorKind {
    Exterior,
    TruncatedPolynomial { height: u32 },
    DividedPower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: CofactorKind,
    /// Bar filtration of the cogenerator, used only for reporting.
    pub weight: u32,
}

impl CofactorSpec {
    pub fn new(name: impl Into<String>, degree: u32, kind: CofactorKind) -> Self {
        CofactorSpec { name: name.into(), degree, kind, weight: 1 }
    }

    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, degree, CofactorKind::Exterior)
    }

    pub fn truncated(name: impl Into<String>, degree: u32, height: u32) -> Self {
        Self::new(name, degree, CofactorKind::TruncatedPolynomial { height })
    }

    pub fn divided(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, degree, CofactorKind::DividedPower)
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }

    fn height(&self) -> Height {
        match self.kind {
            CofactorKind::Exterior => Height::Finite(2),
            CofactorKind::TruncatedPolynomial { height } => Height::Finite(height),
            CofactorKind::DividedPower => Height::Infinite,
        }
    }

    /// Coefficient of `x_i ⊗ x_{n-i}` in the coproduct of the `n`-th basis
    /// element of this cofactor.
    fn split_coefficient(&self, p: Prime, n: u32, i: u32) -> u32 {
        match self.kind {
            CofactorKind::Exterior | CofactorKind::DividedPower => 1,
            CofactorKind::TruncatedPolynomial { .. } => p.binomial(n as u64, i as u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraPresentation {
    prime: Prime,
    cofactors: Vec<CofactorSpec>,
    shape: AlgebraPresentation,
}

/// `(left, right, coefficient)` terms of a coproduct.
pub type Coproduct = Vec<(Monomial, Monomial, u32)>;

impl CoalgebraPresentation {
    pub fn new(prime: Prime, cofactors: Vec<CofactorSpec>) -> Result<Self, Error> {
        for c in &cofactors {
            if !prime.is_two() && c.degree % 2 == 1 && c.kind != CofactorKind::Exterior {
                return Err(Error::InvalidPresentation(format!(
                    "{} has odd degree at p = {prime} and must be exterior",
                    c.name
                )));
            }
        }
        // the basis of the coalgebra is the monomial basis of an algebra of the same shape
        let shape = AlgebraPresentation::new(
            prime,
            cofactors
                .iter()
                .map(|c| GeneratorSpec::new(c.name.clone(), c.degree, c.height()).with_weight(c.weight.max(1)))
                .collect(),
        )?;
        Ok(CoalgebraPresentation { prime, cofactors, shape })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn cofactors(&self) -> &[CofactorSpec] {
        &self.cofactors
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.cofactors.len())
    }

    pub fn degree(&self, b: &Monomial) -> u32 {
        self.shape.degree(b)
    }

    pub fn basis_of_degree(&self, d: u32) -> Vec<Monomial> {
        self.shape.basis_of_degree(d)
    }

    pub fn is_basis(&self, b: &Monomial) -> bool {
        self.shape.is_nonzero(b)
    }

    pub fn min_positive_degree(&self) -> Option<u32> {
        self.cofactors.iter().map(|c| c.degree).min()
    }

    /// Dimensions of the graded pieces in degrees `0..=n`.
    pub fn graded_dims(&self, n: u32) -> Vec<usize> {
        self.shape.poincare_dims(n)
    }

    pub fn format_basis(&self, b: &Monomial) -> String {
        if b.is_unit() {
            return "1".into();
        }
        b.0.iter()
            .zip(&self.cofactors)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, c)| match (c.kind, e) {
                (_, 1) => c.name.clone(),
                (CofactorKind::DividedPower, _) => format!("γ{e}({})", c.name),
                _ => format!("{}^{e}", c.name),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Full coproduct including the primitive terms `b ⊗ 1` and `1 ⊗ b`.
    ///
    /// The tensor product of cofactor coproducts carries the Koszul sign
    /// `(-1)^{|x_j''| |x_k'|}` for every pair `j < k`.
    pub fn coproduct(&self, b: &Monomial) -> Coproduct {
        let mut acc: BTreeMap<(Monomial, Monomial), u32> = BTreeMap::new();
        let mut left = vec![0u32; self.cofactors.len()];
        self.split(b, 0, &mut left, 1, 0, 0, &mut acc);
        acc.into_iter().map(|((l, r), c)| (l, r, c)).collect()
    }

    /// `Δ(b) − b⊗1 − 1⊗b`.
    pub fn reduced_coproduct(&self, b: &Monomial) -> Coproduct {
        self.coproduct(b).into_iter().filter(|(l, r, _)| !l.is_unit() && !r.is_unit()).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &self,
        b: &Monomial,
        j: usize,
        left: &mut Vec<u32>,
        coeff: u32,
        right_degree_so_far: u32,
        sign_parity: u32,
        acc: &mut BTreeMap<(Monomial, Monomial), u32>,
    ) {
        let p = self.prime;
        if coeff == 0 {
            return;
        }
        if j == self.cofactors.len() {
            let right = Monomial(b.0.iter().zip(left.iter()).map(|(e, l)| e - l).collect());
            let key = (Monomial(left.clone()), right);
            let c = p.add(acc.get(&key).copied().unwrap_or(0), p.mul(coeff, p.sign(sign_parity % 2 == 1)));
            if c == 0 {
                acc.remove(&key);
            } else {
                acc.insert(key, c);
            }
            return;
        }
        let cf = &self.cofactors[j];
        let e = b.0[j];
        for i in 0..=e {
            // x_j' of degree i·d moves past the right halves of earlier factors
            let parity = if p.is_two() { 0 } else { (right_degree_so_far * i * cf.degree) % 2 };
            left[j] = i;
            let c = p.mul(coeff, cf.split_coefficient(p, e, i));
            self.split(b, j + 1, left, c, right_degree_so_far + (e - i) * cf.degree, sign_parity + parity, acc);
        }
        left[j] = 0;
    }
}

/// `γ_i γ_j = C(i+j, i) γ_{i+j}` in a divided power algebra.
pub fn divided_power_product(p: Prime, i: u32, j: u32) -> u32 {
    p.binomial((i + j) as u64, i as u64)
}

/// The standard description of `Tor` over a monomial algebra: each exterior
/// generator of degree `d` contributes a divided power cofactor in degree
/// `d − 1`, and each truncated generator of height `h > 2` contributes an
/// exterior suspension class in degree `d − 1` together with a divided
/// power transpotence class in degree `hd − 2` of bar filtration 2.
pub fn tor_model(alg: &AlgebraPresentation) -> Result<CoalgebraPresentation, Error> {
    let mut cofactors = Vec::new();
    for g in alg.generators() {
        let d = g.degree;
        match g.height {
            Height::Finite(2) => cofactors.push(CofactorSpec::divided(format!("a{}", d - 1), d - 1)),
            Height::Finite(h) => {
                cofactors.push(CofactorSpec::exterior(format!("a{}", d - 1), d - 1));
                cofactors.push(CofactorSpec::divided(format!("b{}", h * d - 2), h * d - 2).with_weight(2));
            }
            Height::Infinite => {
                cofactors.push(CofactorSpec::exterior(format!("a{}", d - 1), d - 1));
            }
        }
    }
    CoalgebraPresentation::new(alg.prime(), cofactors)
}
