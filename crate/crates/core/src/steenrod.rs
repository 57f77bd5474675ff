//! Partial Steenrod actions on monomial algebras.
//!
//! An [`ActionTable`] records what is known about `op(g)` for each generator
//! `g` and each basic operation. Values that are not stored and not forced
//! by the unstable axioms or by degree vanishing stay unknown. Products are
//! handled by the Cartan formula; unknown generator values propagate into
//! [`ActionResult::unknown`] so that a zero test can quantify over every
//! possible completion of the table.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::error::Error;
use crate::fp::Prime;

/// `Sq^i` at `p = 2`, or `β^ε P^i` at odd `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasicOp {
    Sq(u32),
    P { bockstein: bool, i: u32 },
}

impl BasicOp {
    pub const BOCKSTEIN: BasicOp = BasicOp::P { bockstein: true, i: 0 };

    pub fn p(i: u32) -> Self {
        BasicOp::P { bockstein: false, i }
    }

    pub fn beta_p(i: u32) -> Self {
        BasicOp::P { bockstein: true, i }
    }

    pub fn identity(prime: Prime) -> Self {
        if prime.is_two() {
            BasicOp::Sq(0)
        } else {
            BasicOp::p(0)
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(self, BasicOp::Sq(0) | BasicOp::P { bockstein: false, i: 0 })
    }

    pub fn is_valid_for(self, prime: Prime) -> bool {
        matches!(self, BasicOp::Sq(_)) == prime.is_two()
    }

    pub fn shift(self, prime: Prime) -> u32 {
        match self {
            BasicOp::Sq(i) => i,
            BasicOp::P { bockstein, i } => 2 * i * (prime.value() - 1) + bockstein as u32,
        }
    }

    /// Vanishes on every class of degree `d` by instability.
    pub fn kills_degree(self, d: u32) -> bool {
        match self {
            BasicOp::Sq(i) => i > d,
            BasicOp::P { bockstein, i } => 2 * i > d || (2 * i == d && bockstein),
        }
    }

    /// Acts as the `p`-th power on classes of degree `d`.
    pub fn is_power_on(self, d: u32) -> bool {
        match self {
            BasicOp::Sq(i) => i == d && d > 0,
            BasicOp::P { bockstein, i } => !bockstein && 2 * i == d && d > 0,
        }
    }

    /// Every non-identity operation that is not killed by instability on a
    /// class of degree `d`.
    pub fn unstable_range(prime: Prime, d: u32) -> Vec<BasicOp> {
        if prime.is_two() {
            (1..=d).map(BasicOp::Sq).collect()
        } else {
            let mut out = Vec::new();
            for i in 0..=d / 2 {
                for bockstein in [false, true] {
                    let op = BasicOp::P { bockstein, i };
                    if !op.is_identity() && !op.kills_degree(d) {
                        out.push(op);
                    }
                }
            }
            out
        }
    }

    /// The pieces `(on_left, on_right)` of the Cartan formula for a product
    /// of two classes, where `left_degree` is the degree of the left factor
    /// and the returned flag marks a negative Koszul sign.
    pub fn cartan_splits(self, left_degree: u32) -> Vec<(BasicOp, BasicOp, bool)> {
        match self {
            BasicOp::Sq(k) => (0..=k).map(|a| (BasicOp::Sq(a), BasicOp::Sq(k - a), false)).collect(),
            BasicOp::P { bockstein, i } => {
                let mut out = Vec::new();
                for a in 0..=i {
                    if bockstein {
                        out.push((BasicOp::beta_p(a), BasicOp::p(i - a), false));
                        out.push((BasicOp::p(a), BasicOp::beta_p(i - a), left_degree % 2 == 1));
                    } else {
                        out.push((BasicOp::p(a), BasicOp::p(i - a), false));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for BasicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasicOp::Sq(i) => write!(f, "Sq^{i}"),
            BasicOp::P { bockstein: true, i: 0 } => f.write_str("β"),
            BasicOp::P { bockstein, i } => {
                if bockstein {
                    f.write_str("β")?;
                }
                write!(f, "P^{i}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionValue {
    Known(Element),
    Unknown,
}

/// An undetermined value `op(class)` of known degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub class: String,
    pub op: BasicOp,
    pub degree: u32,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.op, self.class)
    }
}

/// `known + Σ coeff · slot_1 ⋯ slot_k`, multilinear in the slot values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionResult {
    pub known: Element,
    pub unknown: BTreeMap<Vec<Slot>, Element>,
}

impl ActionResult {
    pub fn is_fully_known(&self) -> bool {
        self.unknown.is_empty()
    }

    fn unit(alg: &AlgebraPresentation, coeff: u32) -> Self {
        ActionResult { known: Element::term(alg.unit(), coeff), unknown: BTreeMap::new() }
    }

    fn add_assign(&mut self, p: Prime, other: ActionResult) {
        self.known.add_assign(p, &other.known);
        for (slots, coeff) in other.unknown {
            let entry = self.unknown.entry(slots).or_default();
            entry.add_assign(p, &coeff);
        }
        self.unknown.retain(|_, c| !c.is_zero());
    }

    /// Right multiplication by the value of one generator operation,
    /// scaled by `coeff`.
    fn times(&self, alg: &AlgebraPresentation, value: &Factor, coeff: u32) -> ActionResult {
        let p = alg.prime();
        let mut out = ActionResult::default();
        match value {
            Factor::Known(v, v_degree) => {
                let v = v.scaled(p, coeff);
                out.known = alg.multiply_unchecked(&self.known, &v);
                for (slots, k) in &self.unknown {
                    // K·U·v = (-1)^{|U||v|} K·v·U
                    let slot_deg: u32 = slots.iter().map(|s| s.degree).sum();
                    let neg = (slot_deg * v_degree) % 2 == 1 && !p.is_two();
                    let prod = alg.multiply_unchecked(k, &v).scaled(p, p.sign(neg));
                    if !prod.is_zero() {
                        out.unknown.insert(slots.clone(), prod);
                    }
                }
            }
            Factor::Unknown(slot) => {
                let k = self.known.scaled(p, coeff);
                if !k.is_zero() {
                    out.unknown.insert(vec![slot.clone()], k);
                }
                for (slots, k) in &self.unknown {
                    let mut s = slots.clone();
                    s.push(slot.clone());
                    let k = k.scaled(p, coeff);
                    if !k.is_zero() {
                        out.unknown.insert(s, k);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by a known element.
    pub fn left_multiply(&self, alg: &AlgebraPresentation, v: &Element) -> ActionResult {
        let mut out = ActionResult { known: alg.multiply_unchecked(v, &self.known), unknown: BTreeMap::new() };
        for (slots, k) in &self.unknown {
            let prod = alg.multiply_unchecked(v, k);
            if !prod.is_zero() {
                out.unknown.insert(slots.clone(), prod);
            }
        }
        out
    }

    /// True iff the value is zero for every assignment of the slots to
    /// elements of their degrees.
    ///
    /// The known part must vanish and every unknown term must vanish when
    /// its slots are replaced by any tuple of basis monomials; by
    /// multilinearity that covers all assignments.
    pub fn is_pessimistically_zero(&self, alg: &AlgebraPresentation) -> bool {
        if !self.known.is_zero() {
            return false;
        }
        let mut bases: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
        self.unknown.iter().all(|(slots, coeff)| {
            for s in slots {
                bases
                    .entry(s.degree)
                    .or_insert_with(|| alg.basis_of_degree(s.degree).into_iter().map(Element::monomial).collect());
            }
            vanishes_on_all(alg, coeff, slots, &bases)
        })
    }
}

fn vanishes_on_all(
    alg: &AlgebraPresentation,
    current: &Element,
    slots: &[Slot],
    bases: &BTreeMap<u32, Vec<Element>>,
) -> bool {
    if current.is_zero() {
        return true;
    }
    let Some((first, rest)) = slots.split_first() else {
        return false;
    };
    bases[&first.degree].iter().all(|b| vanishes_on_all(alg, &alg.multiply_unchecked(current, b), rest, bases))
}

enum Factor {
    Known(Element, u32),
    Unknown(Slot),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: &str, detail: String) {
        self.violations.push(Violation { kind: kind.to_string(), detail });
    }
}

/// Steenrod action data on the generators of a finite algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    base: AlgebraPresentation,
    entries: BTreeMap<(usize, BasicOp), ActionValue>,
}

impl ActionTable {
    pub fn new(base: AlgebraPresentation) -> Result<Self, Error> {
        if let Some(g) = base.generators().iter().find(|g| g.height.max_exponent().is_none()) {
            return Err(Error::InfiniteHeight(g.name.clone()));
        }
        Ok(ActionTable { base, entries: BTreeMap::new() })
    }

    pub fn base(&self) -> &AlgebraPresentation {
        &self.base
    }

    pub fn prime(&self) -> Prime {
        self.base.prime()
    }

    /// Stores `op(gen) = value`. The value must be a homogeneous element of
    /// degree `|gen| + shift(op)`.
    pub fn set(&mut self, gen: &str, op: BasicOp, value: ActionValue) -> Result<(), Error> {
        let idx = self.base.index_of(gen).ok_or_else(|| Error::UnknownGenerator(gen.to_string()))?;
        if !op.is_valid_for(self.prime()) || op.is_identity() {
            return Err(Error::InvalidPresentation(format!("{op} is not a basic operation at p = {}", self.prime())));
        }
        if let ActionValue::Known(e) = &value {
            let target = self.base.generators()[idx].degree + op.shift(self.prime());
            for m in e.monomials() {
                if !self.base.is_nonzero(m) {
                    return Err(Error::MismatchedPresentation);
                }
                if self.base.degree(m) != target {
                    return Err(Error::InvalidPresentation(format!(
                        "{op} {gen} must have degree {target}, got {}",
                        self.base.degree(m)
                    )));
                }
            }
        }
        self.entries.insert((idx, op), value);
        Ok(())
    }

    pub fn set_generator(&mut self, gen: &str, op: BasicOp, target: &str) -> Result<(), Error> {
        let m = self.base.generator_monomial(target)?;
        self.set(gen, op, ActionValue::Known(Element::monomial(m)))
    }

    /// Stored entries, including those added by [`autofill`](Self::autofill).
    pub fn entries(&self) -> impl Iterator<Item = (&str, BasicOp, &ActionValue)> {
        self.entries.iter().map(|((i, op), v)| (self.base.generators()[*i].name.as_str(), *op, v))
    }

    /// Stored known values that the axioms alone would not produce.
    pub fn explicit_entries(&self) -> Vec<(&str, BasicOp, &Element)> {
        self.entries
            .iter()
            .filter_map(|((i, op), v)| match v {
                ActionValue::Known(e) if self.forced(*i, *op).as_ref() != Some(e) => {
                    Some((self.base.generators()[*i].name.as_str(), *op, e))
                }
                _ => None,
            })
            .collect()
    }

    /// Value forced by instability or by an empty target degree.
    fn forced(&self, idx: usize, op: BasicOp) -> Option<Element> {
        let g = &self.base.generators()[idx];
        if op.kills_degree(g.degree) {
            return Some(Element::zero());
        }
        if op.is_power_on(g.degree) {
            let mut e = vec![0; self.base.num_generators()];
            e[idx] = self.prime().value();
            let m = Monomial(e);
            return Some(if self.base.is_nonzero(&m) { Element::monomial(m) } else { Element::zero() });
        }
        let target = g.degree + op.shift(self.prime());
        if self.base.basis_of_degree(target).is_empty() {
            return Some(Element::zero());
        }
        None
    }

    pub fn lookup(&self, gen: &str, op: BasicOp) -> Result<ActionValue, Error> {
        let idx = self.base.index_of(gen).ok_or_else(|| Error::UnknownGenerator(gen.to_string()))?;
        Ok(self.lookup_index(idx, op))
    }

    fn lookup_index(&self, idx: usize, op: BasicOp) -> ActionValue {
        if op.is_identity() {
            return ActionValue::Known(Element::monomial(Monomial::generator(self.base.num_generators(), idx)));
        }
        if let Some(v) = self.entries.get(&(idx, op)) {
            return v.clone();
        }
        match self.forced(idx, op) {
            Some(e) => ActionValue::Known(e),
            None => ActionValue::Unknown,
        }
    }

    /// Adds every value forced by the axioms and marks the rest of the
    /// unstable range unknown. Fails if a stored value contradicts a forced
    /// one.
    pub fn autofill(&self) -> Result<ActionTable, Error> {
        let mut out = self.clone();
        for (idx, g) in self.base.generators().iter().enumerate() {
            for op in BasicOp::unstable_range(self.prime(), g.degree) {
                let forced = self.forced(idx, op);
                match (self.entries.get(&(idx, op)), forced) {
                    (Some(ActionValue::Known(stored)), Some(f)) if *stored != f => {
                        return Err(Error::ActionContradiction {
                            generator: g.name.clone(),
                            op: op.to_string(),
                            detail: format!(
                                "stored {} but the axioms force {}",
                                self.base.format_element(stored),
                                self.base.format_element(&f)
                            ),
                        });
                    }
                    (Some(ActionValue::Unknown), Some(f)) => {
                        out.entries.insert((idx, op), ActionValue::Known(f));
                    }
                    (Some(_), _) => {}
                    (None, Some(f)) => {
                        out.entries.insert((idx, op), ActionValue::Known(f));
                    }
                    (None, None) => {
                        out.entries.insert((idx, op), ActionValue::Unknown);
                    }
                }
            }
        }
        Ok(out)
    }

    fn factor(&self, idx: usize, op: BasicOp) -> Factor {
        let g = &self.base.generators()[idx];
        let degree = g.degree + op.shift(self.prime());
        match self.lookup_index(idx, op) {
            ActionValue::Known(e) => Factor::Known(e, degree),
            ActionValue::Unknown => Factor::Unknown(Slot { class: g.name.clone(), op, degree }),
        }
    }

    /// Cartan expansion of `op` applied to an ordered product of generators.
    fn apply_to_word(&self, op: BasicOp, word: &[usize], coeff: u32) -> ActionResult {
        let (total, with_beta) = match op {
            BasicOp::Sq(k) => (k, false),
            BasicOp::P { bockstein, i } => (i, bockstein),
        };
        let mut states = self.cartan_states(word, total, with_beta, coeff);
        states[total as usize][with_beta as usize].take().unwrap_or_default()
    }

    /// Cartan expansions on a word for every operation up to `total`
    /// (and with or without a Bockstein when `with_beta`), indexed
    /// `[i][ε]`.
    fn cartan_states(&self, word: &[usize], total: u32, with_beta: bool, coeff: u32) -> Vec<Vec<Option<ActionResult>>> {
        let p = self.prime();
        let beta_states = if with_beta { 2 } else { 1 };
        let mut factors: BTreeMap<usize, Vec<Vec<Factor>>> = BTreeMap::new();
        for &idx in word {
            factors.entry(idx).or_insert_with(|| {
                let g_degree = self.base.generators()[idx].degree;
                (0..=g_degree.min(total))
                    .map(|extra| {
                        (0..beta_states)
                            .map(|db| {
                                let piece = if p.is_two() {
                                    BasicOp::Sq(extra)
                                } else {
                                    BasicOp::P { bockstein: db == 1, i: extra }
                                };
                                self.factor(idx, piece)
                            })
                            .collect()
                    })
                    .collect()
            });
        }
        // states[a][b]: `a` units of Sq/P and `b` Bocksteins spent so far
        let mut states: Vec<Vec<Option<ActionResult>>> = vec![vec![None; beta_states]; total as usize + 1];
        states[0][0] = Some(ActionResult::unit(&self.base, coeff));
        let mut prefix_degree = 0u32;
        for &idx in word {
            let g_degree = self.base.generators()[idx].degree;
            let pieces = &factors[&idx];
            let mut next: Vec<Vec<Option<ActionResult>>> = vec![vec![None; beta_states]; total as usize + 1];
            for (a, row) in states.iter().enumerate() {
                for (b, state) in row.iter().enumerate() {
                    let Some(state) = state else { continue };
                    for (extra, by_beta) in pieces.iter().enumerate().take(total as usize - a + 1) {
                        for db in 0..(beta_states - b) {
                            let piece = if p.is_two() {
                                BasicOp::Sq(extra as u32)
                            } else {
                                BasicOp::P { bockstein: db == 1, i: extra as u32 }
                            };
                            if piece.kills_degree(g_degree) {
                                continue;
                            }
                            let sign = p.sign(db == 1 && prefix_degree % 2 == 1);
                            let term = state.times(&self.base, &by_beta[db], sign);
                            if term.known.is_zero() && term.unknown.is_empty() {
                                continue;
                            }
                            let slot = &mut next[a + extra][b + db];
                            match slot {
                                Some(acc) => acc.add_assign(p, term),
                                None => *slot = Some(term),
                            }
                        }
                    }
                }
            }
            states = next;
            prefix_degree += g_degree;
        }
        states
    }

    fn word_of(m: &Monomial) -> Vec<usize> {
        m.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    /// Full Cartan expansion of `op(e)`.
    pub fn cartan_apply(&self, op: BasicOp, e: &Element) -> ActionResult {
        let p = self.prime();
        let mut out = ActionResult::default();
        for (m, c) in e.terms() {
            out.add_assign(p, self.apply_to_word(op, &Self::word_of(m), c));
        }
        out
    }

    /// True iff `op(e) = 0` for every completion of the unknown entries.
    pub fn pessimistic_is_zero(&self, op: BasicOp, e: &Element) -> bool {
        self.cartan_apply(op, e).is_pessimistically_zero(&self.base)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let p = self.prime();
        let alg = &self.base;
        for ((idx, op), value) in &self.entries {
            let g = &alg.generators()[*idx];
            let ActionValue::Known(v) = value else { continue };
            let target = g.degree + op.shift(p);
            if v.monomials().any(|m| alg.degree(m) != target || !alg.is_nonzero(m)) {
                report.push("degree", format!("{op} {} is not homogeneous of degree {target}", g.name));
            }
            if let Some(f) = self.forced(*idx, *op) {
                if f != *v {
                    report.push(
                        "unstable axiom",
                        format!(
                            "{op} {} = {} but the axioms force {}",
                            g.name,
                            alg.format_element(v),
                            alg.format_element(&f)
                        ),
                    );
                }
            }
        }

        for (idx, g) in alg.generators().iter().enumerate() {
            let known = |op: BasicOp| match self.lookup_index(idx, op) {
                ActionValue::Known(e) => Some(e),
                ActionValue::Unknown => None,
            };
            let fully = |op: BasicOp, e: &Element| {
                let r = self.cartan_apply(op, e);
                r.is_fully_known().then_some(r.known)
            };
            if p.is_two() {
                for k in 1..=g.degree {
                    let (Some(v), Some(w)) = (known(BasicOp::Sq(k)), known(BasicOp::Sq(k + 1))) else {
                        continue;
                    };
                    let Some(lhs) = fully(BasicOp::Sq(1), &v) else { continue };
                    // Sq^1 Sq^k = Sq^{k+1} for k even, 0 for k odd
                    let rhs = if k % 2 == 0 { w } else { Element::zero() };
                    if lhs != rhs {
                        report.push(
                            "adem",
                            format!(
                                "Sq^1 Sq^{k} {} = {} but should be {}",
                                g.name,
                                alg.format_element(&lhs),
                                alg.format_element(&rhs)
                            ),
                        );
                    }
                }
            } else {
                for i in 0..=g.degree / 2 {
                    let Some(v) = known(BasicOp::beta_p(i)) else { continue };
                    if let Some(r) = fully(BasicOp::BOCKSTEIN, &v) {
                        if !r.is_zero() {
                            report.push(
                                "bockstein",
                                format!("β βP^{i} {} = {} is nonzero", g.name, alg.format_element(&r)),
                            );
                        }
                    }
                }
                if let (Some(v), Some(w)) = (known(BasicOp::p(1)), known(BasicOp::p(2))) {
                    if let Some(lhs) = fully(BasicOp::p(1), &v) {
                        let rhs = w.scaled(p, 2);
                        if lhs != rhs {
                            report.push(
                                "adem",
                                format!(
                                    "P^1 P^1 {} = {} but 2 P^2 {} = {}",
                                    g.name,
                                    alg.format_element(&lhs),
                                    g.name,
                                    alg.format_element(&rhs)
                                ),
                            );
                        }
                    }
                }
            }

            // the truncation relation g^h = 0 must be stable under every operation
            if let Some(max) = g.height.max_exponent() {
                let h = max + 1;
                let word = vec![idx; h as usize];
                let source_degree = h * g.degree;
                let top = alg.top_degree().unwrap_or(0);
                let room = top.saturating_sub(source_degree);
                let total = if p.is_two() { room } else { room / (2 * (p.value() - 1)) };
                let states = self.cartan_states(&word, total, !p.is_two(), 1);
                for op in BasicOp::unstable_range(p, source_degree) {
                    if source_degree + op.shift(p) > top {
                        continue;
                    }
                    let (i, b) = match op {
                        BasicOp::Sq(k) => (k, false),
                        BasicOp::P { bockstein, i } => (i, bockstein),
                    };
                    let Some(r) = &states[i as usize][b as usize] else {
                        continue;
                    };
                    if r.is_fully_known() && !r.known.is_zero() {
                        report.push(
                            "cartan",
                            format!(
                                "{op} ({}^{h}) = {} although {}^{h} = 0",
                                g.name,
                                alg.format_element(&r.known),
                                g.name
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSpec;

    fn f4_mod2() -> ActionTable {
        let alg = AlgebraPresentation::new(
            Prime::TWO,
            vec![
                GeneratorSpec::truncated("x3", 3, 4),
                GeneratorSpec::exterior("x5", 5),
                GeneratorSpec::exterior("x15", 15),
                GeneratorSpec::exterior("x23", 23),
            ],
        )
        .unwrap();
        let mut t = ActionTable::new(alg).unwrap();
        t.set_generator("x3", BasicOp::Sq(2), "x5").unwrap();
        t.set_generator("x15", BasicOp::Sq(8), "x23").unwrap();
        t.autofill().unwrap()
    }

    fn el(t: &ActionTable, f: &[(&str, u32)]) -> Element {
        Element::monomial(t.base().monomial_from(f).unwrap())
    }

    #[test]
    fn unstable_values() {
        let t = f4_mod2();
        assert_eq!(t.lookup("x3", BasicOp::Sq(3)).unwrap(), ActionValue::Known(el(&t, &[("x3", 2)])));
        assert_eq!(t.lookup("x3", BasicOp::Sq(5)).unwrap(), ActionValue::Known(Element::zero()));
        assert_eq!(t.lookup("x3", BasicOp::Sq(1)).unwrap(), ActionValue::Known(Element::zero()));
        assert_eq!(t.lookup("x23", BasicOp::Sq(1)).unwrap(), ActionValue::Unknown);
    }

    #[test]
    fn sq2_of_square_cancels() {
        let t = f4_mod2();
        let r = t.cartan_apply(BasicOp::Sq(2), &el(&t, &[("x3", 2)]));
        assert!(r.known.is_zero());
        assert!(r.unknown.is_empty());
    }

    #[test]
    fn witness_cross_terms_vanish() {
        let t = f4_mod2();
        let mu = el(&t, &[("x3", 3), ("x5", 1), ("x23", 1)]);
        for k in 1..=4 {
            let r = t.cartan_apply(BasicOp::Sq(k), &mu);
            assert!(r.known.is_zero(), "Sq^{k}");
            assert!(r.is_pessimistically_zero(t.base()), "Sq^{k}");
        }
        let r = t.cartan_apply(BasicOp::Sq(1), &mu);
        assert!(r.unknown.keys().any(|s| s[0].class == "x23"));
        assert!(!t.pessimistic_is_zero(BasicOp::Sq(3), &el(&t, &[("x3", 1)])));
    }

    #[test]
    fn autofill_is_idempotent() {
        let t = f4_mod2();
        assert_eq!(t.autofill().unwrap(), t);
    }

    #[test]
    fn contradiction_detected() {
        let mut t = ActionTable::new(f4_mod2().base().clone()).unwrap();
        t.set("x3", BasicOp::Sq(3), ActionValue::Known(Element::zero())).unwrap();
        assert!(matches!(t.autofill(), Err(Error::ActionContradiction { .. })));
        let report = t.validate();
        assert!(report.violations.iter().any(|v| v.kind == "unstable axiom"));
    }

    #[test]
    fn catalog_like_table_is_clean() {
        assert!(f4_mod2().validate().is_clean());
    }

    #[test]
    fn bockstein_squared_flagged() {
        let alg = AlgebraPresentation::new(
            Prime::THREE,
            vec![
                GeneratorSpec::exterior("x3", 3),
                GeneratorSpec::truncated("y4", 4, 3),
                GeneratorSpec::exterior("x5", 5),
            ],
        )
        .unwrap();
        let mut t = ActionTable::new(alg).unwrap();
        t.set_generator("x3", BasicOp::BOCKSTEIN, "y4").unwrap();
        t.set_generator("y4", BasicOp::BOCKSTEIN, "x5").unwrap();
        let report = t.validate();
        assert!(report.violations.iter().any(|v| v.kind == "bockstein"), "{report:?}");
    }

    #[test]
    fn bockstein_is_signed_derivation() {
        let alg = AlgebraPresentation::new(
            Prime::THREE,
            vec![
                GeneratorSpec::exterior("x3", 3),
                GeneratorSpec::exterior("x7", 7),
                GeneratorSpec::truncated("x8", 8, 3),
            ],
        )
        .unwrap();
        let mut t = ActionTable::new(alg).unwrap();
        t.set_generator("x3", BasicOp::p(1), "x7").unwrap();
        t.set_generator("x7", BasicOp::BOCKSTEIN, "x8").unwrap();
        let t = t.autofill().unwrap();
        // β(x3 x7) = βx3·x7 - x3·βx7 = -x3 x8
        let r = t.cartan_apply(BasicOp::BOCKSTEIN, &el(&t, &[("x3", 1), ("x7", 1)]));
        assert!(r.is_fully_known());
        assert_eq!(r.known, Element::term(t.base().monomial_from(&[("x3", 1), ("x8", 1)]).unwrap(), 2));
        // βP^1 x3 = x8
        let r = t.cartan_apply(BasicOp::beta_p(1), &el(&t, &[("x3", 1)]));
        assert!(r.unknown.is_empty() || r.known.is_zero());
    }

    #[test]
    fn shifts() {
        assert_eq!(BasicOp::Sq(4).shift(Prime::TWO), 4);
        assert_eq!(BasicOp::p(1).shift(Prime::THREE), 4);
        assert_eq!(BasicOp::beta_p(3).shift(Prime::THREE), 13);
        assert_eq!(BasicOp::BOCKSTEIN.to_string(), "β");
        assert_eq!(BasicOp::beta_p(1).to_string(), "βP^1");
    }
}
