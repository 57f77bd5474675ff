//! Transpotence-type differentials `d_r(z) = x^k` applied formally to an
//! E₂ presentation.
//!
//! Each differential removes its exterior source generator and truncates
//! the target generator at height `k`. This models every differential in
//! the catalog exactly without building a general spectral sequence.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, GeneratorSpec, Height};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DifferentialSpec {
    pub page: u32,
    pub source: String,
    /// Target monomial as `(generator, exponent)` factors.
    pub target: Vec<(String, u32)>,
    /// Not part of the source data; added because the dimension count
    /// requires it.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inferred: bool,
}

impl DifferentialSpec {
    pub fn new(page: u32, source: impl Into<String>, target: impl Into<String>, exponent: u32) -> Self {
        DifferentialSpec { page, source: source.into(), target: vec![(target.into(), exponent)], inferred: false }
    }

    pub fn inferred(mut self) -> Self {
        self.inferred = true;
        self
    }

    /// The target as a single generator power.
    pub fn target_power(&self) -> Result<(&str, u32), Error> {
        match self.target.as_slice() {
            [(g, k)] if *k >= 1 => Ok((g.as_str(), *k)),
            _ => {
                Err(Error::InvalidDifferential(format!("target of d{} {} is not a pure power", self.page, self.source)))
            }
        }
    }

    pub fn describe(&self) -> String {
        let target = self
            .target
            .iter()
            .map(|(g, k)| if *k == 1 { g.clone() } else { format!("{g}^{k}") })
            .collect::<Vec<_>>()
            .join(" ");
        format!("d{}({}) = {}", self.page, self.source, target)
    }
}

/// Degree and filtration bookkeeping for one differential: returns the
/// problems found, empty when consistent.
pub fn check_differential(e2: &AlgebraPresentation, d: &DifferentialSpec) -> Result<Vec<String>, Error> {
    let source = e2.generator(&d.source)?;
    let (target, k) = d.target_power()?;
    let target = e2.generator(target)?;
    let mut issues = Vec::new();
    if target.degree * k != source.degree + 1 {
        issues.push(format!(
            "{}: target degree {} is not source degree {} + 1",
            d.describe(),
            target.degree * k,
            source.degree
        ));
    }
    let jump = (target.weight * k) as i64 - source.weight as i64;
    if jump != d.page as i64 {
        issues.push(format!("{}: filtration rises by {jump}, not by the page number {}", d.describe(), d.page));
    }
    Ok(issues)
}

/// The formal E∞ presentation.
pub fn apply_differentials(e2: &AlgebraPresentation, ds: &[DifferentialSpec]) -> Result<AlgebraPresentation, Error> {
    let mut gens: Vec<GeneratorSpec> = e2.generators().to_vec();
    let mut truncated: Vec<String> = Vec::new();
    let mut removed: Vec<String> = Vec::new();
    for d in ds {
        let source = e2.generator(&d.source)?;
        if source.height != Height::Finite(2) {
            return Err(Error::InvalidDifferential(format!("source {} of {} is not exterior", d.source, d.describe())));
        }
        if removed.contains(&d.source) {
            return Err(Error::InvalidDifferential(format!("{} is the source of two differentials", d.source)));
        }
        let (target, k) = d.target_power()?;
        if target == d.source {
            return Err(Error::InvalidDifferential(d.describe()));
        }
        let g =
            gens.iter_mut().find(|g| g.name == target).ok_or_else(|| Error::UnknownGenerator(target.to_string()))?;
        if truncated.iter().any(|t| t == target) {
            return Err(Error::InvalidDifferential(format!("{target} is truncated by two differentials")));
        }
        let fits = match g.height {
            Height::Infinite => true,
            Height::Finite(h) => k < h,
        };
        if k < 2 || !fits {
            return Err(Error::InvalidDifferential(format!(
                "{} cannot truncate {target} of height {}",
                d.describe(),
                g.height
            )));
        }
        g.height = Height::Finite(k);
        truncated.push(target.to_string());
        removed.push(d.source.clone());
    }
    gens.retain(|g| !removed.contains(&g.name));
    AlgebraPresentation::new(e2.prime(), gens)
}

/// Graded dimensions of the formal E∞ page in degrees `0..=n`.
pub fn e_infinity_dims(e2: &AlgebraPresentation, ds: &[DifferentialSpec], n: u32) -> Result<Vec<usize>, Error> {
    Ok(apply_differentials(e2, ds)?.poincare_dims(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Prime;

    fn g2_e2() -> AlgebraPresentation {
        AlgebraPresentation::new(
            Prime::TWO,
            vec![
                GeneratorSpec::polynomial("x3", 3),
                GeneratorSpec::exterior("x5", 5),
                GeneratorSpec::exterior("z11", 11),
            ],
        )
        .unwrap()
    }

    #[test]
    fn g2_reconstruction() {
        let e2 = g2_e2();
        let d = DifferentialSpec::new(3, "z11", "x3", 4);
        assert!(check_differential(&e2, &d).unwrap().is_empty());
        let einf = apply_differentials(&e2, &[d]).unwrap();
        let alg = AlgebraPresentation::new(
            Prime::TWO,
            vec![GeneratorSpec::truncated("x3", 3, 4), GeneratorSpec::exterior("x5", 5)],
        )
        .unwrap();
        assert_eq!(einf.poincare_dims(30), alg.poincare_dims(30));
    }

    #[test]
    fn empty_list_is_identity() {
        assert_eq!(e_infinity_dims(&g2_e2(), &[], 20).unwrap(), g2_e2().poincare_dims(20));
    }

    #[test]
    fn inconsistent_lists_rejected() {
        let e2 = g2_e2();
        let twice = [DifferentialSpec::new(3, "z11", "x3", 4), DifferentialSpec::new(3, "x5", "x3", 2)];
        assert!(apply_differentials(&e2, &twice).is_err());
        assert!(apply_differentials(&e2, &[DifferentialSpec::new(3, "x3", "x5", 1)]).is_err());
        assert!(apply_differentials(&e2, &[DifferentialSpec::new(3, "z11", "x5", 2)]).is_err());
    }

    #[test]
    fn filtration_mismatch_reported() {
        let e2 = g2_e2();
        let d = DifferentialSpec::new(5, "z11", "x3", 4);
        let issues = check_differential(&e2, &d).unwrap();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].contains("filtration"));
    }
}
