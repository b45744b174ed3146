//! Brute-force enumeration of group determinant values over integer boxes.
//!
//! Scans are split into fixed-size chunks evaluated in parallel. Each chunk
//! keeps the first witness it sees for every value, and chunks are merged by
//! keeping the witness with the smaller scan index, so a table does not
//! depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::c8c2;
use crate::error::{Error, Result};
use crate::gdet::{eval_bareiss, DedekindEvaluator};
use crate::groups::{CayleyGroup, GroupSpec};

/// Default cap on the number of points in a box.
pub const DEFAULT_CAP: u128 = 1 << 26;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evaluator {
    /// The product of the four `C8 x C2` closed forms.
    ClosedForm,
    Dedekind,
    Bareiss,
}

impl Evaluator {
    pub fn name(self) -> &'static str {
        match self {
            Evaluator::ClosedForm => "closed-form",
            Evaluator::Dedekind => "dedekind",
            Evaluator::Bareiss => "bareiss",
        }
    }

    pub fn parse(name: &str) -> Option<Evaluator> {
        [Evaluator::ClosedForm, Evaluator::Dedekind, Evaluator::Bareiss].into_iter().find(|e| e.name() == name)
    }

    /// The cheapest evaluator that applies to `group`.
    pub fn default_for(group: &GroupSpec) -> Evaluator {
        if group.is_c8xc2() {
            Evaluator::ClosedForm
        } else if group.abelian().is_some() {
            Evaluator::Dedekind
        } else {
            Evaluator::Bareiss
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub group: GroupSpec,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    /// Only values with `|value| <= value_bound` are recorded.
    pub value_bound: Option<BigInt>,
    pub evaluator: Evaluator,
    pub cap: u128,
}

impl SearchSpec {
    /// The box `[lo, hi]^|G|` with the default evaluator and cap.
    pub fn new(group: GroupSpec, lo: i64, hi: i64) -> Result<SearchSpec> {
        let n = group.size();
        let spec = SearchSpec {
            evaluator: Evaluator::default_for(&group),
            group,
            lo: vec![lo; n],
            hi: vec![hi; n],
            value_bound: None,
            cap: DEFAULT_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_value_bound(mut self, bound: BigInt) -> SearchSpec {
        self.value_bound = Some(bound);
        self
    }

    pub fn with_evaluator(mut self, evaluator: Evaluator) -> Result<SearchSpec> {
        self.evaluator = evaluator;
        self.validate()?;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: u128) -> SearchSpec {
        self.cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.group.size();
        if self.lo.len() != n || self.hi.len() != n {
            return Err(Error::AssignmentLength { expected: n, got: self.lo.len().min(self.hi.len()) });
        }
        if let Some(i) = (0..n).find(|&i| self.lo[i] > self.hi[i]) {
            return Err(Error::Precondition(format!("empty range at coordinate {i}")));
        }
        match self.evaluator {
            Evaluator::ClosedForm if !self.group.is_c8xc2() => {
                Err(Error::Precondition("the closed-form evaluator only applies to C8xC2".into()))
            }
            Evaluator::Dedekind if self.group.abelian().is_none() => {
                Err(Error::Precondition(format!("{} is not abelian", self.group)))
            }
            _ => Ok(()),
        }
    }

    /// Number of points in the box.
    pub fn volume(&self) -> u128 {
        self.lo.iter().zip(&self.hi).fold(1u128, |acc, (l, h)| acc.saturating_mul((h - l + 1) as u128))
    }

    /// The point with scan index `index`; the first coordinate is the most
    /// significant digit, so scan order is lexicographic.
    pub fn point(&self, mut index: u64) -> Vec<i64> {
        let n = self.lo.len();
        let mut a = vec![0i64; n];
        for i in (0..n).rev() {
            let width = (self.hi[i] - self.lo[i] + 1) as u64;
            a[i] = self.lo[i] + (index % width) as i64;
            index /= width;
        }
        a
    }

    fn in_bound(&self, v: &BigInt) -> bool {
        self.value_bound.as_ref().is_none_or(|b| v.abs() <= *b)
    }
}

/// Evaluates assignments for one search.
struct Engine {
    evaluator: Evaluator,
    dedekind: Option<DedekindEvaluator>,
    cayley: CayleyGroup,
}

impl Engine {
    fn new(spec: &SearchSpec) -> Engine {
        Engine {
            evaluator: spec.evaluator,
            dedekind: spec.group.abelian().map(DedekindEvaluator::new),
            cayley: spec.group.cayley(),
        }
    }

    fn eval(&self, a: &[i64]) -> Result<BigInt> {
        match self.evaluator {
            Evaluator::ClosedForm => {
                let a = c8c2::vec16(a)?;
                Ok(c8c2::d8x2_fast(&a).map(BigInt::from).unwrap_or_else(|| c8c2::d8x2(&a)))
            }
            Evaluator::Dedekind => self.dedekind.as_ref().expect("abelian").eval(a),
            Evaluator::Bareiss => eval_bareiss(&self.cayley, a),
        }
    }
}

type Found = BTreeMap<BigInt, (u64, Vec<i64>)>;

fn merge_found(mut x: Found, y: Found) -> Found {
    for (v, (i, a)) in y {
        match x.get(&v) {
            Some((j, _)) if *j <= i => {}
            _ => {
                x.insert(v, (i, a));
            }
        }
    }
    x
}

/// Values found by a search, one witness per value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    pub group: String,
    pub evaluator: String,
    /// Number of assignments evaluated (0 for tables loaded from disk).
    pub scanned: u64,
    pub duration_ms: u64,
    pub entries: BTreeMap<BigInt, Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
    pub witness: Vec<i64>,
    pub evaluator: String,
    pub group: String,
}

fn finish(spec: &SearchSpec, found: Found, scanned: u64, start: Instant) -> ValueTable {
    ValueTable {
        group: spec.group.to_string(),
        evaluator: spec.evaluator.name().into(),
        scanned,
        duration_ms: start.elapsed().as_millis() as u64,
        entries: found.into_iter().map(|(v, (_, a))| (v, a)).collect(),
    }
}

/// Scans every point of the box in lexicographic order.
pub fn enumerate(spec: &SearchSpec) -> Result<ValueTable> {
    spec.validate()?;
    let volume = spec.volume();
    if volume > spec.cap {
        return Err(Error::BoxTooLarge(volume, spec.cap));
    }
    let start = Instant::now();
    let engine = Engine::new(spec);
    let total = volume as u64;
    let chunks = total.div_ceil(CHUNK);
    let found = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Found> {
            let mut found = Found::new();
            for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let a = spec.point(index);
                let v = engine.eval(&a)?;
                if spec.in_bound(&v) {
                    found.entry(v).or_insert((index, a));
                }
            }
            Ok(found)
        })
        .try_reduce(Found::new, |x, y| Ok(merge_found(x, y)))?;
    Ok(finish(spec, found, total, start))
}

/// Evaluates `samples` uniformly random points of the box. Sample `i` is drawn
/// from the ChaCha stream `i / CHUNK` seeded with `seed`, so the result is
/// reproducible for any thread count.
pub fn sample(spec: &SearchSpec, samples: u64, seed: u64) -> Result<ValueTable> {
    spec.validate()?;
    if samples as u128 > spec.cap {
        return Err(Error::BoxTooLarge(samples as u128, spec.cap));
    }
    let start = Instant::now();
    let engine = Engine::new(spec);
    let chunks = samples.div_ceil(CHUNK);
    let found = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Found> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut found = Found::new();
            for index in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let a: Vec<i64> = spec.lo.iter().zip(&spec.hi).map(|(&l, &h)| rng.gen_range(l..=h)).collect();
                let v = engine.eval(&a)?;
                if spec.in_bound(&v) {
                    found.entry(v).or_insert((index, a));
                }
            }
            Ok(found)
        })
        .try_reduce(Found::new, |x, y| Ok(merge_found(x, y)))?;
    Ok(finish(spec, found, samples, start))
}

impl ValueTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        self.entries.contains_key(v)
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.keys()
    }

    /// Adds the entries of `other`, keeping existing witnesses.
    pub fn merge(&mut self, other: ValueTable) {
        for (v, a) in other.entries {
            self.entries.entry(v).or_insert(a);
        }
        self.scanned += other.scanned;
        self.duration_ms += other.duration_ms;
    }

    /// Re-evaluates every witness by fraction-free elimination; returns the count.
    pub fn verify_witnesses(&self) -> Result<usize> {
        let group = GroupSpec::parse(&self.group)?.cayley();
        self.entries
            .par_iter()
            .map(|(v, a)| {
                let got = eval_bareiss(&group, a)?;
                if &got == v {
                    Ok(())
                } else {
                    Err(Error::Inconsistent(format!("witness {a:?} evaluates to {got}, recorded {v}")))
                }
            })
            .collect::<Result<Vec<()>>>()
            .map(|ok| ok.len())
    }

    pub fn records(&self) -> impl Iterator<Item = Record> + '_ {
        self.entries.iter().map(|(v, a)| Record {
            value: v.clone(),
            witness: a.clone(),
            evaluator: self.evaluator.clone(),
            group: self.group.clone(),
        })
    }

    /// One JSON record per line, in increasing value order.
    pub fn save_jsonl(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(std::fs::File::create(path)?);
        for r in self.records() {
            serde_json::to_writer(&mut out, &r).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn load_jsonl(path: &Path) -> Result<ValueTable> {
        let reader = BufReader::new(std::fs::File::open(path)?);
        let mut table: Option<ValueTable> = None;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let r: Record = serde_json::from_str(&line).map_err(|e| Error::Record(format!("line {}: {e}", i + 1)))?;
            let t = table.get_or_insert_with(|| ValueTable {
                group: r.group.clone(),
                evaluator: r.evaluator.clone(),
                scanned: 0,
                duration_ms: 0,
                entries: BTreeMap::new(),
            });
            if r.group != t.group {
                return Err(Error::Record(format!("line {}: group {} in a table for {}", i + 1, r.group, t.group)));
            }
            let size = GroupSpec::parse(&r.group)?.size();
            if r.witness.len() != size {
                return Err(Error::Record(format!("line {}: witness has {} entries, expected {size}", i + 1, r.witness.len())));
            }
            t.entries.entry(r.value).or_insert(r.witness);
        }
        table.ok_or_else(|| Error::Record("empty table".into()))
    }
}

/// Membership predicates for value sets known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// The `C8 x C2` classifier.
    C8xC2,
    /// Odd integers and multiples of 32.
    C8,
    /// Odd integers and multiples of 16.
    C4,
    /// Odd integers and multiples of 4.
    C2,
    Any,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::C8xC2 => "C8xC2",
            Predicate::C8 => "C8",
            Predicate::C4 => "C4",
            Predicate::C2 => "C2",
            Predicate::Any => "any",
        }
    }

    pub fn parse(name: &str) -> Option<Predicate> {
        let key = name.to_ascii_lowercase().replace(['×', '*'], "x");
        [Predicate::C8xC2, Predicate::C8, Predicate::C4, Predicate::C2, Predicate::Any]
            .into_iter()
            .find(|p| p.name().to_ascii_lowercase() == key)
    }

    /// `Ok(None)` when the value is beyond what the predicate can decide.
    pub fn contains(self, v: &BigInt) -> Result<Option<bool>> {
        let odd_or_multiple = |m: u32| v.is_odd() || (v % (BigInt::from(1) << m)).is_zero();
        Ok(Some(match self {
            Predicate::C8xC2 => match v.to_i128().map(c8c2::classify) {
                Some(Ok(verdict)) => verdict.member,
                Some(Err(Error::BeyondBound(..))) | None => return Ok(None),
                Some(Err(e)) => return Err(e),
            },
            Predicate::C8 => odd_or_multiple(5),
            Predicate::C4 => odd_or_multiple(4),
            Predicate::C2 => odd_or_multiple(2),
            Predicate::Any => true,
        }))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub inner: String,
    pub outer: String,
    pub checked: usize,
    pub violations: Vec<Record>,
    #[serde(with = "crate::serde_int::vec")]
    pub undecided: Vec<BigInt>,
    pub passed: bool,
}

/// Checks every value of `inner` against `outer`.
pub fn verify_subset(inner: &ValueTable, outer: Predicate) -> Result<SubsetReport> {
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    for r in inner.records() {
        match outer.contains(&r.value)? {
            Some(true) => {}
            Some(false) => violations.push(r),
            None => undecided.push(r.value),
        }
    }
    Ok(SubsetReport {
        inner: format!("search({})", inner.group),
        outer: outer.name().into(),
        checked: inner.len(),
        passed: violations.is_empty(),
        violations,
        undecided,
    })
}

/// One side of an inclusion `S_inner ⊂ S_outer`.
#[derive(Clone, Copy, Debug)]
pub enum Side<'a> {
    Table(&'a ValueTable),
    Predicate(Predicate),
}

impl Side<'_> {
    fn label(&self) -> String {
        match self {
            Side::Table(t) => format!("search({})", t.group),
            Side::Predicate(p) => p.name().into(),
        }
    }

    fn contains(&self, v: &BigInt) -> Result<Option<bool>> {
        match self {
            Side::Table(t) => Ok(Some(t.contains(v))),
            Side::Predicate(p) => p.contains(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LinkStatus {
    /// `value` lies in the outer set but not in the inner one. `proven` is set
    /// when the inner side is a predicate rather than a bounded search.
    Separated {
        #[serde(with = "crate::serde_int")]
        value: BigInt,
        witness: Option<Vec<i64>>,
        proven: bool,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub inner: String,
    pub outer: String,
    #[serde(flatten)]
    pub status: LinkStatus,
}

/// Looks for a value in `outer` but not in `inner`, preferring small `|value|`.
///
/// Outer tables contribute their own values; outer predicates are scanned
/// over `|n| <= range`.
pub fn strictness_probe(inner: Side, outer: Side, range: u64) -> Result<LinkReport> {
    let mut candidates: Vec<(BigInt, Option<Vec<i64>>)> = match outer {
        Side::Table(t) => t.entries.iter().map(|(v, a)| (v.clone(), Some(a.clone()))).collect(),
        Side::Predicate(p) => {
            let mut out = Vec::new();
            for n in -(range as i128)..=range as i128 {
                let v = BigInt::from(n);
                if p.contains(&v)? == Some(true) {
                    out.push((v, None));
                }
            }
            out
        }
    };
    candidates.sort_by(|(x, _), (y, _)| x.abs().cmp(&y.abs()).then(x.cmp(y)));
    let mut status = LinkStatus::Inconclusive;
    for (v, witness) in candidates {
        if inner.contains(&v)? == Some(false) {
            let proven = matches!(inner, Side::Predicate(_));
            status = LinkStatus::Separated { value: v, witness, proven };
            break;
        }
    }
    Ok(LinkReport { inner: inner.label(), outer: outer.label(), status })
}
