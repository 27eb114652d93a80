//! The code `RM_q(1, m)`: affine functions `x ↦ λ·x + b` on `V = F_q^m`,
//! evaluated at every point of `V`.
//!
//! Coordinate positions are the points of `V` in lexicographic order of their
//! element-index tuples, so position `i` has the base-`q` digits of `i` as its
//! coordinates (first coordinate most significant). Codewords are kept as
//! `(λ, b)` pairs and evaluated on demand.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Upper bound on `q^m` for any code we construct.
pub const MAX_LENGTH: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<FieldElement>);

impl Point {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub lambda: Vec<FieldElement>,
    pub b: FieldElement,
}

impl Codeword {
    pub fn is_constant(&self) -> bool {
        self.lambda.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct GrmCode {
    field: FieldSpec,
    m: usize,
    n: usize,
    size: u64,
    // coordinates of every point, row-major, n * m entries
    coords: Vec<FieldElement>,
}

impl GrmCode {
    pub fn new(field: FieldSpec, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDimension);
        }
        let q = field.q();
        let too_large = || Error::CodeTooLarge { q, m };
        let n = (q as u64)
            .checked_pow(m as u32)
            .filter(|&n| n as usize <= MAX_LENGTH)
            .ok_or_else(too_large)? as usize;
        let size = (n as u64).checked_mul(q as u64).ok_or_else(too_large)?;
        let mut coords = Vec::with_capacity(n * m);
        for i in 0..n {
            coords.extend(
                index_digits(i as u64, q, m)
                    .into_iter()
                    .map(FieldElement::from_index_unchecked),
            );
        }
        Ok(GrmCode {
            field,
            m,
            n,
            size,
            coords,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Code length `q^m`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of codewords `q^(m+1)`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Weight of every non-constant codeword: `(q-1) q^(m-1)`.
    pub fn min_weight(&self) -> usize {
        self.n / self.q() as usize * (self.q() as usize - 1)
    }

    pub fn point_coords(&self, index: usize) -> &[FieldElement] {
        &self.coords[index * self.m..(index + 1) * self.m]
    }

    pub fn point(&self, index: usize) -> Point {
        Point(self.point_coords(index).to_vec())
    }

    /// All `q^m` points in coordinate order.
    pub fn points(&self) -> Vec<Point> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    pub fn point_index(&self, p: &Point) -> Result<usize> {
        self.check_point(p)?;
        Ok(p.0.iter().fold(0usize, |acc, c| {
            acc * self.q() as usize + c.index() as usize
        }))
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.0.len() != self.m {
            return Err(Error::PointDimension {
                got: p.0.len(),
                expected: self.m,
            });
        }
        for c in &p.0 {
            self.field.element(c.index())?;
        }
        Ok(())
    }

    /// Codeword number `index` in `(λ, b)` lexicographic order.
    pub fn codeword(&self, index: u64) -> Codeword {
        let digits = index_digits(index, self.q(), self.m + 1);
        let b = FieldElement::from_index_unchecked(digits[self.m]);
        let lambda = digits[..self.m]
            .iter()
            .map(|&d| FieldElement::from_index_unchecked(d))
            .collect();
        Codeword { lambda, b }
    }

    pub fn codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        (0..self.size).map(move |i| self.codeword(i))
    }

    /// `λ·u + b`.
    pub fn eval_coords(&self, c: &Codeword, u: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        c.lambda
            .iter()
            .zip(u)
            .fold(c.b, |acc, (&l, &x)| f.add(acc, f.mul(l, x)))
    }

    pub fn eval(&self, c: &Codeword, position: usize) -> FieldElement {
        self.eval_coords(c, self.point_coords(position))
    }

    /// The full length-`n` vector of a codeword.
    pub fn expand(&self, c: &Codeword) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.eval(c, i)).collect()
    }

    /// Positions where the codeword is nonzero, by evaluation at every point.
    pub fn support(&self, c: &Codeword) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| !self.eval(c, i).is_zero())
            .collect()
    }

    /// Hamming weight by scanning all positions.
    pub fn weight(&self, c: &Codeword) -> usize {
        (0..self.n).filter(|&i| !self.eval(c, i).is_zero()).count()
    }

    /// Hamming weight from the structure of affine functions: a non-constant
    /// `λ` takes every value on exactly `q^(m-1)` points.
    pub fn known_weight(&self, c: &Codeword) -> usize {
        if !c.is_constant() {
            self.min_weight()
        } else if c.b.is_zero() {
            0
        } else {
            self.n
        }
    }

    pub fn shell(&self, weight: usize) -> Vec<Codeword> {
        self.codewords()
            .filter(|c| self.weight(c) == weight)
            .collect()
    }

    /// Weight distribution `weight -> count`, by scanning every codeword.
    pub fn weight_distribution(&self) -> BTreeMap<usize, u64> {
        (0..self.size)
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc, i| {
                *acc.entry(self.weight(&self.codeword(i))).or_insert(0u64) += 1;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (w, c) in b {
                    *a.entry(w).or_insert(0) += c;
                }
                a
            })
    }

    /// Parity-check view: a basis of `C^⊥` as length-`n` vectors.
    pub fn dual_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        // rows: the all-ones word and the m coordinate functions
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(self.m + 1);
        rows.push(vec![FieldElement::ONE; self.n]);
        for j in 0..self.m {
            rows.push((0..self.n).map(|i| self.point_coords(i)[j]).collect());
        }
        let pivots = row_reduce(f, &mut rows);
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; self.n];
                v[fc] = FieldElement::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rows[r][fc]);
                }
                v
            })
            .collect()
    }

    /// Every word of `C^⊥`, provided there are at most `budget` of them.
    pub fn dual_codewords(&self, budget: u64) -> Result<Vec<Vec<FieldElement>>> {
        let basis = self.dual_basis();
        let q = self.q() as u64;
        let count = q
            .checked_pow(basis.len() as u32)
            .filter(|&c| c <= budget)
            .ok_or(Error::BudgetExceeded {
                work: (q as u128).pow(basis.len() as u32),
                budget: budget as u128,
            })?;
        let f = &self.field;
        Ok((0..count)
            .map(|idx| {
                let digits = index_digits(idx, self.q(), basis.len());
                let mut v = vec![FieldElement::ZERO; self.n];
                for (d, row) in digits.iter().zip(&basis) {
                    if *d == 0 {
                        continue;
                    }
                    let s = FieldElement::from_index_unchecked(*d);
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(s, r));
                    }
                }
                v
            })
            .collect())
    }
}

/// Base-`q` digits of `index`, most significant first, padded to `len`.
fn index_digits(mut index: u64, q: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut().rev() {
        *d = (index % q as u64) as u32;
        index /= q as u64;
    }
    out
}

/// Gauss-Jordan elimination in place; returns pivot columns of the nonzero rows
/// (which are moved to the top).
fn row_reduce(f: &FieldSpec, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col];
            for j in 0..ncols {
                let sub = f.mul(factor, rows[r][j]);
                rows[i][j] = f.sub(rows[i][j], sub);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Reduced basis of the row space.
pub(crate) fn row_space_basis(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let mut work = rows.to_vec();
    row_reduce(f, &mut work);
    work
}

pub fn rank(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(f, &mut work).len()
}

/// A set `T` of coordinate positions, given as distinct points of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(code: &GrmCode, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            code.check_point(p)?;
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::RepeatedPoint {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_positions(code: &GrmCode, positions: &[usize]) -> Result<Self> {
        let mut points = Vec::with_capacity(positions.len());
        for &i in positions {
            if i >= code.n() {
                return Err(Error::PositionOutOfRange(i, code.n()));
            }
            points.push(code.point(i));
        }
        Self::new(code, points)
    }

    pub fn empty() -> Self {
        PointSet { points: Vec::new() }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self, code: &GrmCode) -> Vec<usize> {
        self.points
            .iter()
            .map(|p| code.point_index(p).expect("validated point"))
            .collect()
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(|p| p.0.iter().all(|c| c.is_zero()))
    }

    /// `T + v`.
    pub fn translate(&self, code: &GrmCode, v: &Point) -> Result<PointSet> {
        code.check_point(v)?;
        let f = code.field();
        let points = self
            .points
            .iter()
            .map(|p| Point(p.0.iter().zip(&v.0).map(|(&a, &b)| f.add(a, b)).collect()))
            .collect();
        Ok(PointSet { points })
    }

    /// Translates so that the first point in coordinate order becomes the origin.
    pub fn normalized(&self, code: &GrmCode) -> PointSet {
        match self.points.iter().min() {
            None => self.clone(),
            Some(base) => {
                let f = code.field();
                let shift = Point(base.0.iter().map(|&c| f.neg(c)).collect());
                self.translate(code, &shift).expect("same dimension")
            }
        }
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses `"(0,0);(0,1)"` into points (element indices).
pub fn parse_points(s: &str) -> Result<Vec<Point>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|chunk| {
            let inner = chunk
                .trim()
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "point `{}` is not a parenthesized tuple",
                        chunk.trim()
                    ))
                })?;
            inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map(FieldElement::from_index_unchecked)
                        .map_err(|_| Error::Parse(format!("bad element index `{}`", x.trim())))
                })
                .collect::<Result<Vec<_>>>()
                .map(Point)
        })
        .collect()
}

/// The two shapes of a rank-2 four-point set. With `u_3 = a u_1 + b u_2` in
/// the normalized basis, `CollinearTriple` is `a + b = 1` or `ab = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subcase {
    CollinearTriple,
    Generic,
}

/// Size, affine rank and (for four points of rank 2) subcase of a position set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TClass {
    pub t: usize,
    pub rank: usize,
    pub subcase: Option<Subcase>,
}

impl TClass {
    pub const fn new(t: usize, rank: usize) -> Self {
        TClass {
            t,
            rank,
            subcase: None,
        }
    }

    pub const fn with_subcase(t: usize, rank: usize, subcase: Subcase) -> Self {
        TClass {
            t,
            rank,
            subcase: Some(subcase),
        }
    }

    /// Every class the closed forms cover, in a fixed order.
    pub fn all_for_size(t: usize) -> Vec<TClass> {
        match t {
            2 => vec![TClass::new(2, 1)],
            3 => vec![TClass::new(3, 2), TClass::new(3, 1)],
            4 => vec![
                TClass::new(4, 3),
                TClass::with_subcase(4, 2, Subcase::CollinearTriple),
                TClass::with_subcase(4, 2, Subcase::Generic),
                TClass::new(4, 1),
            ],
            _ => Vec::new(),
        }
    }

    /// Structurally well-formed (not necessarily occurring) class.
    pub fn is_well_formed(&self) -> bool {
        let needs_subcase = self.t == 4 && self.rank == 2;
        (2..=4).contains(&self.t)
            && self.rank >= 1
            && self.rank < self.t
            && needs_subcase == self.subcase.is_some()
    }
}

impl fmt::Display for TClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}-rank{}", self.t, self.rank)?;
        match self.subcase {
            Some(Subcase::CollinearTriple) => write!(f, "-collinear"),
            Some(Subcase::Generic) => write!(f, "-generic"),
            None => Ok(()),
        }
    }
}

impl FromStr for TClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad class label `{s}`"));
        let mut parts = s.split('-');
        let t = parts
            .next()
            .and_then(|p| p.strip_prefix('t'))
            .and_then(|p| p.parse().ok())
            .ok_or_else(bad)?;
        let rank = parts
            .next()
            .and_then(|p| p.strip_prefix("rank"))
            .and_then(|p| p.parse().ok())
            .ok_or_else(bad)?;
        let subcase = match parts.next() {
            None => None,
            Some("collinear") => Some(Subcase::CollinearTriple),
            Some("generic") => Some(Subcase::Generic),
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(TClass { t, rank, subcase })
    }
}

impl Serialize for TClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classification together with the normalized coefficients `(a, b)` of the
/// rank-2 four-point case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: TClass,
    pub coefficients: Option<(FieldElement, FieldElement)>,
}

/// Classifies a position set of size 2 to 4.
pub fn classify(code: &GrmCode, t: &PointSet) -> Result<TClass> {
    classify_detailed(code, t).map(|c| c.class)
}

pub fn classify_detailed(code: &GrmCode, t: &PointSet) -> Result<Classification> {
    let refs: Vec<&[FieldElement]> = t.points.iter().map(|p| p.coords()).collect();
    classify_coords(code.field(), &refs, None)
}

/// Classification using `t.points()[base]` as the base point instead of the
/// first point in coordinate order.
pub fn classify_from_base(code: &GrmCode, t: &PointSet, base: usize) -> Result<Classification> {
    if base >= t.len() {
        return Err(Error::PositionOutOfRange(base, t.len()));
    }
    let refs: Vec<&[FieldElement]> = t.points.iter().map(|p| p.coords()).collect();
    classify_coords(code.field(), &refs, Some(base))
}

/// Classification of the positions `idx` of `code` (no validation beyond size
/// and distinctness).
pub fn classify_positions(code: &GrmCode, idx: &[usize]) -> Result<TClass> {
    let refs: Vec<&[FieldElement]> = idx.iter().map(|&i| code.point_coords(i)).collect();
    classify_coords(code.field(), &refs, None).map(|c| c.class)
}

fn classify_coords(
    f: &FieldSpec,
    pts: &[&[FieldElement]],
    base: Option<usize>,
) -> Result<Classification> {
    let size = pts.len();
    if !(2..=4).contains(&size) {
        return Err(Error::UnsupportedSize(size, "2..=4"));
    }
    for i in 0..size {
        for j in i + 1..size {
            if pts[i] == pts[j] {
                return Err(Error::RepeatedPoint {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let base_at = base.unwrap_or_else(|| {
        (0..size)
            .min_by(|&a, &b| pts[a].cmp(pts[b]))
            .expect("nonempty")
    });
    let base = pts[base_at];
    let diffs: Vec<Vec<FieldElement>> = (0..size)
        .filter(|&i| i != base_at)
        .map(|i| {
            pts[i]
                .iter()
                .zip(base)
                .map(|(&x, &y)| f.sub(x, y))
                .collect()
        })
        .collect();
    let r = rank(f, &diffs);
    let mut class = TClass::new(size, r);
    let mut coefficients = None;
    if size == 4 && r == 2 {
        let (a, b) = normalized_coefficients(f, &diffs);
        let collinear = f.add(a, b) == FieldElement::ONE || f.mul(a, b).is_zero();
        class.subcase = Some(if collinear {
            Subcase::CollinearTriple
        } else {
            Subcase::Generic
        });
        coefficients = Some((a, b));
    }
    Ok(Classification {
        class,
        coefficients,
    })
}

/// For three difference vectors spanning a plane: reorder so the first two
/// are independent and solve `u_3 = a u_1 + b u_2`.
fn normalized_coefficients(f: &FieldSpec, d: &[Vec<FieldElement>]) -> (FieldElement, FieldElement) {
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if let Some(sol) = solve_in_span(f, &d[i], &d[j], &d[k]) {
            return sol;
        }
    }
    unreachable!("rank-2 difference vectors always contain an independent pair")
}

/// `(a, b)` with `w = a u + b v`, when `u, v` are independent.
fn solve_in_span(
    f: &FieldSpec,
    u: &[FieldElement],
    v: &[FieldElement],
    w: &[FieldElement],
) -> Option<(FieldElement, FieldElement)> {
    let m = u.len();
    for i in 0..m {
        for j in i + 1..m {
            let det = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
            if det.is_zero() {
                continue;
            }
            let inv = f.inv(det).ok()?;
            let a = f.mul(f.sub(f.mul(w[i], v[j]), f.mul(w[j], v[i])), inv);
            let b = f.mul(f.sub(f.mul(u[i], w[j]), f.mul(u[j], w[i])), inv);
            return Some((a, b));
        }
    }
    None
}

/// Whether three of the four points lie on a common affine line.
pub fn has_collinear_triple(code: &GrmCode, t: &PointSet) -> bool {
    let f = code.field();
    let pts = t.points();
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let d1: Vec<_> = pts[b]
                    .0
                    .iter()
                    .zip(&pts[a].0)
                    .map(|(&x, &y)| f.sub(x, y))
                    .collect();
                let d2: Vec<_> = pts[c]
                    .0
                    .iter()
                    .zip(&pts[a].0)
                    .map(|(&x, &y)| f.sub(x, y))
                    .collect();
                if rank(f, &[d1, d2]) < 2 {
                    return true;
                }
            }
        }
    }
    false
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }

    /// Subsets whose first element is `first`, remaining elements above it.
    pub fn starting_with(n: usize, k: usize, first: usize) -> impl Iterator<Item = Vec<usize>> {
        let rest = if k == 0 || first >= n {
            None
        } else {
            Some(Subsets::new(n - first - 1, k - 1))
        };
        rest.into_iter().flatten().map(move |s| {
            let mut v = Vec::with_capacity(s.len() + 1);
            v.push(first);
            v.extend(s.into_iter().map(|x| x + first + 1));
            v
        })
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Class census over every `t`-subset of `V`.
pub fn census(code: &GrmCode, t: usize) -> Result<BTreeMap<TClass, u64>> {
    census_over(code, Subsets::new(code.n(), t), t)
}

/// Class census over the `t`-subsets that contain the origin. Every class that
/// occurs at all occurs here, since classes are translation invariant.
pub fn census_through_origin(code: &GrmCode, t: usize) -> Result<BTreeMap<TClass, u64>> {
    census_over(code, Subsets::starting_with(code.n(), t, 0), t)
}

fn census_over(
    code: &GrmCode,
    subsets: impl Iterator<Item = Vec<usize>>,
    t: usize,
) -> Result<BTreeMap<TClass, u64>> {
    if !(2..=4).contains(&t) {
        return Err(Error::UnsupportedSize(t, "2..=4"));
    }
    let mut out = BTreeMap::new();
    for s in subsets {
        *out.entry(classify_positions(code, &s)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// First subset (in lexicographic order, through the origin) of every class.
pub fn class_representatives(code: &GrmCode, t: usize) -> Result<BTreeMap<TClass, PointSet>> {
    let mut out = BTreeMap::new();
    for s in Subsets::starting_with(code.n(), t, 0) {
        let c = classify_positions(code, &s)?;
        out.entry(c)
            .or_insert_with(|| PointSet::from_positions(code, &s).expect("valid positions"));
    }
    Ok(out)
}

/// `count` uniformly random `t`-subsets from a seeded generator.
pub fn sample_subsets(n: usize, t: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut s = index::sample(&mut rng, n, t).into_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

/// A uniformly random point of `V`.
pub fn random_point(code: &GrmCode, rng: &mut impl Rng) -> Point {
    code.point(rng.gen_range(0..code.n()))
}
