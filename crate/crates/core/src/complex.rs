//! Reduced bar and cobar complexes, sliced by internal degree.
//!
//! Each internal degree gives an independent finite cochain complex, so
//! slices are built and ranked in parallel.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Monomial};
use crate::coalgebra::CoalgebraPresentation;
use crate::error::Error;
use crate::fp::Prime;
use crate::matrix::FpMatrix;

type Word = Vec<Monomial>;

/// How the word length enters the displayed total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum DegreeConvention {
    /// `total = internal + s`
    Cobar,
    /// `total = internal − s`
    Bar,
}

/// Homology dimensions keyed by `(s, internal degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedDims {
    pub convention: DegreeConvention,
    pub cutoff: u32,
    entries: BTreeMap<(u32, u32), usize>,
}

impl BigradedDims {
    pub fn new(convention: DegreeConvention, cutoff: u32) -> Self {
        BigradedDims { convention, cutoff, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, s: u32, internal: u32, dim: usize) {
        if dim > 0 {
            self.entries.insert((s, internal), dim);
        } else {
            self.entries.remove(&(s, internal));
        }
    }

    pub fn get(&self, s: u32, internal: u32) -> usize {
        self.entries.get(&(s, internal)).copied().unwrap_or(0)
    }

    pub fn total_degree(&self, s: u32, internal: u32) -> u32 {
        match self.convention {
            DegreeConvention::Cobar => internal + s,
            DegreeConvention::Bar => internal - s,
        }
    }

    /// Nonzero entries as `(s, internal, dim)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, usize)> + '_ {
        self.entries.iter().map(|(&(s, i), &d)| (s, i, d))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimensions by total degree `0..=cutoff`.
    pub fn total_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.cutoff as usize + 1];
        for (s, i, d) in self.entries() {
            let t = self.total_degree(s, i);
            if t <= self.cutoff {
                out[t as usize] += d;
            }
        }
        out
    }

    /// Dimensions by total degree, restricted to one word length.
    pub fn total_dims_at(&self, s: u32) -> Vec<usize> {
        let mut out = vec![0; self.cutoff as usize + 1];
        for (s2, i, d) in self.entries() {
            let t = self.total_degree(s2, i);
            if s2 == s && t <= self.cutoff {
                out[t as usize] += d;
            }
        }
        out
    }
}

/// True iff every nonzero entry sits in even total degree.
pub fn collapse_check(dims: &BigradedDims) -> bool {
    dims.entries().all(|(s, i, _)| dims.total_degree(s, i) % 2 == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomologyReport {
    pub dims: BigradedDims,
    /// Every composite of consecutive differentials vanished.
    pub d_squared_zero: bool,
    /// Euler characteristics of complete slices matched the generating
    /// function prediction.
    pub euler_consistent: bool,
    /// Largest slice dimension encountered.
    pub max_slice: usize,
}

struct Slice {
    internal: u32,
    homology: Vec<(u32, usize)>,
    d_squared_zero: bool,
    euler_ok: bool,
    max_slice: usize,
}

/// Coefficients of `1 / (1 + Q(t))` where `Q` has the given positive-degree
/// coefficients: the Euler characteristic of each internal degree of a
/// complex whose `s`-th term is the `s`-fold tensor power of `Q`.
fn euler_series(positive_dims: &[usize], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    for i in 1..=n {
        let mut acc = 0i64;
        for d in 1..=i {
            let q = positive_dims.get(d).copied().unwrap_or(0) as i64;
            if q != 0 {
                acc -= q * c[i - d];
            }
        }
        c[i] = acc;
    }
    c
}

/// Words of internal degree `internal` and length at most `max_len`,
/// grouped by length.
fn words_by_length(bases: &[Vec<Monomial>], internal: u32, max_len: u32) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new(); max_len as usize + 1];
    let mut current = Vec::new();
    fn rec(bases: &[Vec<Monomial>], remaining: u32, max_len: u32, current: &mut Word, out: &mut Vec<Vec<Word>>) {
        if remaining == 0 {
            out[current.len()].push(current.clone());
            return;
        }
        if current.len() as u32 == max_len {
            return;
        }
        for d in 1..=remaining {
            for b in &bases[d as usize] {
                current.push(b.clone());
                rec(bases, remaining - d, max_len, current, out);
                current.pop();
            }
        }
    }
    rec(bases, internal, max_len, &mut current, &mut out);
    for group in &mut out {
        group.sort();
    }
    out
}

fn slice_ranks(
    prime: Prime,
    words: &[Vec<Word>],
    differential: impl Fn(usize, &Word) -> Vec<(Word, u32)>,
    target_len: impl Fn(usize) -> Option<usize>,
) -> Result<(Vec<usize>, bool), Error> {
    // ranks[s] is the rank of the differential leaving length s
    let mut matrices: Vec<Option<FpMatrix<Word, Word>>> = Vec::with_capacity(words.len());
    for (s, cols) in words.iter().enumerate() {
        let Some(t) = target_len(s) else {
            matrices.push(None);
            continue;
        };
        let entries: Vec<_> = cols
            .iter()
            .flat_map(|w| differential(s, w).into_iter().map(move |(target, c)| ((target, w.clone()), c as i64)))
            .collect();
        matrices.push(Some(FpMatrix::new(prime, words[t].clone(), cols.clone(), entries)?));
    }
    let ranks = matrices.iter().map(|m| m.as_ref().map_or(0, |m| m.rank())).collect();
    let mut dd_zero = true;
    for (s, m) in matrices.iter().enumerate() {
        let (Some(m), Some(t)) = (m, target_len(s)) else {
            continue;
        };
        if let Some(Some(next)) = matrices.get(t) {
            if target_len(t).is_some() {
                dd_zero &= m.compose(next)?.is_zero();
            }
        }
    }
    Ok((ranks, dd_zero))
}

/// Homology of the reduced cobar complex through total degree `n`.
///
/// `d[c_1|…|c_s] = Σ_i (-1)^{Σ_{j<i}(|c_j|+1)} Σ (-1)^{|c_i'|} […|c_i'|c_i''|…]`
/// over the reduced coproduct of each letter.
pub fn cobar_homology(c: &CoalgebraPresentation, n: u32) -> Result<HomologyReport, Error> {
    let p = c.prime();
    let bases: Vec<Vec<Monomial>> = (0..=n).map(|d| if d == 0 { Vec::new() } else { c.basis_of_degree(d) }).collect();
    let dmin = c.min_positive_degree().unwrap_or(u32::MAX);
    let positive: Vec<usize> = bases.iter().map(Vec::len).collect();
    let chi = euler_series(&positive, n as usize);

    let slices: Vec<Result<Slice, Error>> = (0..=n)
        .into_par_iter()
        .map(|internal| {
            // homology is wanted for s <= n - internal, which needs one more length
            let wanted = n - internal;
            let max_len = wanted + 1;
            let words = words_by_length(&bases, internal, max_len);
            let differential = |_s: usize, w: &Word| -> Vec<(Word, u32)> {
                let mut out = Vec::new();
                let mut prefix = 0u32;
                for (i, letter) in w.iter().enumerate() {
                    for (l, r, coeff) in c.reduced_coproduct(letter) {
                        let odd = (prefix + c.degree(&l)) % 2 == 1;
                        let mut target = Vec::with_capacity(w.len() + 1);
                        target.extend_from_slice(&w[..i]);
                        target.push(l);
                        target.push(r);
                        target.extend_from_slice(&w[i + 1..]);
                        out.push((target, p.mul(coeff, p.sign(odd))));
                    }
                    prefix += c.degree(letter) + 1;
                }
                out
            };
            let top = words.len() - 1;
            let (ranks, dd_zero) = slice_ranks(p, &words, differential, |s| (s < top).then_some(s + 1))?;
            let mut homology = Vec::new();
            for s in 0..=wanted.min(top as u32) {
                let s_us = s as usize;
                let incoming = if s_us == 0 { 0 } else { ranks[s_us - 1] };
                let dim = words[s_us].len() - ranks[s_us] - incoming;
                homology.push((s, dim));
            }
            // complete when no word of the slice was cut off by the length bound
            let complete = dmin == u32::MAX || internal / dmin <= max_len;
            let euler_ok = !complete || {
                let full: i64 = (0..words.len())
                    .map(|s| {
                        let incoming = if s == 0 { 0 } else { ranks[s - 1] };
                        let d = (words[s].len() - ranks[s] - incoming) as i64;
                        if s % 2 == 0 {
                            d
                        } else {
                            -d
                        }
                    })
                    .sum();
                full == chi[internal as usize]
            };
            Ok(Slice {
                internal,
                homology,
                d_squared_zero: dd_zero,
                euler_ok,
                max_slice: words.iter().map(Vec::len).max().unwrap_or(0),
            })
        })
        .collect();

    assemble(DegreeConvention::Cobar, n, slices)
}

/// Homology of the reduced bar complex through total degree `n`.
///
/// `d[a_1|…|a_s] = Σ_{i<s} (-1)^{Σ_{j≤i}(|a_j|+1)} […|a_i a_{i+1}|…]`.
pub fn bar_homology(a: &AlgebraPresentation, n: u32) -> Result<HomologyReport, Error> {
    if !a.is_finite() {
        return Err(Error::InvalidPresentation("bar homology needs a finite algebra".into()));
    }
    let dmin = a.generators().iter().map(|g| g.degree).min().unwrap_or(u32::MAX);
    if dmin < 2 {
        return Err(Error::InvalidPresentation("bar homology needs generators of degree at least 2".into()));
    }
    let p = a.prime();
    // total = internal - s >= internal - internal / dmin
    let mut max_internal = 0u32;
    while dmin != u32::MAX && (max_internal + 1) - (max_internal + 1) / dmin <= n {
        max_internal += 1;
    }
    let bases: Vec<Vec<Monomial>> =
        (0..=max_internal).map(|d| if d == 0 { Vec::new() } else { a.basis_of_degree(d) }).collect();
    let positive: Vec<usize> = bases.iter().map(Vec::len).collect();
    let chi = euler_series(&positive, max_internal as usize);

    let slices: Vec<Result<Slice, Error>> = (0..=max_internal)
        .into_par_iter()
        .map(|internal| {
            let words = words_by_length(&bases, internal, internal);
            let differential = |_s: usize, w: &Word| -> Vec<(Word, u32)> {
                let mut out = Vec::new();
                let mut prefix = 0u32;
                for i in 0..w.len().saturating_sub(1) {
                    prefix += a.degree(&w[i]) + 1;
                    let Some((prod, negative)) = a.multiply_monomials(&w[i], &w[i + 1]) else {
                        continue;
                    };
                    let mut target = Vec::with_capacity(w.len() - 1);
                    target.extend_from_slice(&w[..i]);
                    target.push(prod);
                    target.extend_from_slice(&w[i + 2..]);
                    out.push((target, p.sign((prefix % 2 == 1) != negative)));
                }
                out
            };
            let (ranks, dd_zero) = slice_ranks(p, &words, differential, |s| (s > 0).then(|| s - 1))?;
            let mut homology = Vec::new();
            let mut euler = 0i64;
            for s in 0..words.len() {
                let outgoing = ranks[s];
                let incoming = ranks.get(s + 1).copied().unwrap_or(0);
                let dim = words[s].len() - outgoing - incoming;
                euler += if s % 2 == 0 { dim as i64 } else { -(dim as i64) };
                if internal >= s as u32 && internal - s as u32 <= n {
                    homology.push((s as u32, dim));
                }
            }
            Ok(Slice {
                internal,
                homology,
                d_squared_zero: dd_zero,
                euler_ok: euler == chi[internal as usize],
                max_slice: words.iter().map(Vec::len).max().unwrap_or(0),
            })
        })
        .collect();

    assemble(DegreeConvention::Bar, n, slices)
}

fn assemble(convention: DegreeConvention, n: u32, slices: Vec<Result<Slice, Error>>) -> Result<HomologyReport, Error> {
    let mut dims = BigradedDims::new(convention, n);
    let mut d_squared_zero = true;
    let mut euler_consistent = true;
    let mut max_slice = 0;
    for slice in slices {
        let slice = slice?;
        for (s, d) in slice.homology {
            dims.insert(s, slice.internal, d);
        }
        d_squared_zero &= slice.d_squared_zero;
        euler_consistent &= slice.euler_ok;
        max_slice = max_slice.max(slice.max_slice);
    }
    log::debug!("{convention:?} complex through degree {n}: largest slice {max_slice}");
    Ok(HomologyReport { dims, d_squared_zero, euler_consistent, max_slice })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimDiscrepancy {
    pub degree: u32,
    pub computed: usize,
    pub expected: usize,
}

/// Per-degree differences through the shorter of the two inputs.
pub fn compare_dims(computed: &[usize], expected: &[usize]) -> Vec<DimDiscrepancy> {
    computed
        .iter()
        .zip(expected)
        .enumerate()
        .filter(|(_, (c, e))| c != e)
        .map(|(d, (&c, &e))| DimDiscrepancy { degree: d as u32, computed: c, expected: e })
        .collect()
}
