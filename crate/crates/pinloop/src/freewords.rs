//! Words in a free group with a cyclic order on its symmetric generating set.
//!
//! A letter is a nonzero integer: `g + 1` stands for generator `g` and
//! `-(g + 1)` for its inverse. For ranks up to 26 words print as strings with
//! `a` for generator 0 and `A` for its inverse.
//!
//! Intersection numbers follow the linked-axes count: two conjugacy classes
//! meet once for every pair of lifts through the base vertex of the Cayley tree
//! whose axes have linked endpoints, weighted by the inverse of the number of
//! tree vertices the two axes share.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = i32;

/// The generator index of a letter.
#[inline]
pub fn generator(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

#[inline]
pub fn letter(generator: usize, positive: bool) -> Letter {
    let l = generator as Letter + 1;
    if positive {
        l
    } else {
        -l
    }
}

/// Total order on letters used for canonical rotations: `a < A < b < B < …`.
#[inline]
fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Rotates a word left by `k` letters: `σ(ab) = ba`.
pub fn rotate(w: &[Letter], k: usize) -> Vec<Letter> {
    if w.is_empty() {
        return Vec::new();
    }
    let k = k % w.len();
    w[k..].iter().chain(&w[..k]).copied().collect()
}

/// A cyclically reduced word stored in its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Canonicalises a word that is already cyclically reduced.
    pub fn from_reduced(w: &[Letter]) -> Self {
        debug_assert!(is_cyclically_reduced(w));
        let k = least_rotation(w);
        CyclicWord(rotate(w, k))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::from_reduced(&inverse(&self.0))
    }

    pub fn pow(&self, n: usize) -> CyclicWord {
        CyclicWord::from_reduced(&self.0.repeat(n))
    }
}

pub fn is_cyclically_reduced(w: &[Letter]) -> bool {
    free_reduce(w).len() == w.len() && (w.len() < 2 || w[0] != -w[w.len() - 1])
}

/// Index of the lexicographically least rotation (Booth's algorithm).
fn least_rotation(w: &[Letter]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let key = |i: usize| letter_key(w[i % n]);
    let mut f = vec![-1i64; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = f[j - k - 1];
        while i != -1 && key(j) != key(k + i as usize + 1) {
            if key(j) < key(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && key(j) != key(k) {
            if key(j) < key(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Returns `(c, u)` with `w = u · c · u⁻¹` in the free group, `c` cyclically
/// reduced and canonically rotated. The empty word maps to the empty class.
pub fn cyclic_reduce(w: &[Letter]) -> (CyclicWord, Vec<Letter>) {
    let r = free_reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == -r[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    let core = &r[lo..hi];
    let k = least_rotation(core);
    // core = x·y with |x| = k; the canonical rotation y·x equals x⁻¹·core·x.
    let mut conj: Vec<Letter> = r[..lo].to_vec();
    conj.extend_from_slice(&core[..k]);
    (CyclicWord(rotate(core, k)), conj)
}

/// Writes a nonempty cyclic word as `root^exponent` with `root` primitive.
pub fn primitive_root(c: &CyclicWord) -> Result<(CyclicWord, usize)> {
    let w = c.letters();
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    // Prefix function; the smallest period is n - border when it divides n.
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut k = border[i - 1];
        while k > 0 && w[i] != w[k] {
            k = border[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k;
    }
    let p = n - border[n - 1];
    if n.is_multiple_of(p) {
        Ok((CyclicWord::from_reduced(&w[..p]), n / p))
    } else {
        Ok((c.clone(), 1))
    }
}

/// A cyclic arrangement of all `2r` letters of a rank-`r` free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicOrder {
    sequence: Vec<Letter>,
    #[serde(skip)]
    rank_of: Vec<usize>,
}

impl CyclicOrder {
    pub fn new(sequence: Vec<Letter>) -> Result<Self> {
        let rank = sequence.len() / 2;
        let mut rank_of = vec![usize::MAX; 2 * rank];
        if !sequence.len().is_multiple_of(2) {
            return Err(Error::Parse("cyclic order has odd length".into()));
        }
        for (i, &l) in sequence.iter().enumerate() {
            if l == 0 || generator(l) >= rank {
                return Err(Error::Parse(format!("letter {l} outside rank {rank}")));
            }
            let s = letter_slot(l);
            if rank_of[s] != usize::MAX {
                return Err(Error::Parse(format!("letter {l} repeated in cyclic order")));
            }
            rank_of[s] = i;
        }
        Ok(CyclicOrder { sequence, rank_of })
    }

    /// Parses a string such as `"aABb"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_word(s)?)
    }

    pub fn rank(&self) -> usize {
        self.sequence.len() / 2
    }

    pub fn sequence(&self) -> &[Letter] {
        &self.sequence
    }

    fn position(&self, l: Letter) -> usize {
        self.rank_of[letter_slot(l)]
    }

    /// `+1` when `p, q, r` appear in this cyclic order, `-1` when reversed and
    /// `0` when two of them coincide.
    pub fn orient(&self, p: Letter, q: Letter, r: Letter) -> i8 {
        if p == q || q == r || p == r {
            return 0;
        }
        let (a, b, c) = (self.position(p), self.position(q), self.position(r));
        let forward = (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
        if forward {
            1
        } else {
            -1
        }
    }

    /// The order induced on a subset of generators, renumbered through `map`
    /// (old generator → new generator).
    pub fn restrict(&self, map: &[Option<usize>]) -> CyclicOrder {
        let seq: Vec<Letter> =
            self.sequence.iter().filter_map(|&l| map[generator(l)].map(|g| letter(g, l > 0))).collect();
        CyclicOrder::new(seq).expect("restriction of a valid order")
    }
}

#[inline]
fn letter_slot(l: Letter) -> usize {
    2 * generator(l) + usize::from(l < 0)
}

/// An eventually periodic infinite reduced word `prefix · period^∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl Ray {
    /// `w^∞` for a cyclically reduced nonempty word.
    pub fn forward(w: &[Letter]) -> Ray {
        Ray { prefix: Vec::new(), period: w.to_vec() }
    }

    /// `(w⁻¹)^∞`.
    pub fn backward(w: &[Letter]) -> Ray {
        Ray { prefix: Vec::new(), period: inverse(w) }
    }

    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Number of letters after which two rays that still agree must coincide.
    fn agreement_bound(&self, other: &Ray) -> usize {
        self.prefix.len().max(other.prefix.len()) + self.period.len() + other.period.len()
    }

    /// Length of the longest common prefix, or `None` if the rays coincide.
    pub fn common_prefix(&self, other: &Ray) -> Option<usize> {
        let bound = self.agreement_bound(other);
        (0..bound).find(|&i| self.at(i) != other.at(i))
    }
}

/// Cyclic orientation of three boundary points of the Cayley tree, all seen
/// from the base vertex. Every vertex carries the same cyclic order on its
/// incident edges, the edge `x` leading to `g·x`.
pub fn cord(x: &Ray, y: &Ray, z: &Ray, order: &CyclicOrder) -> i8 {
    let (Some(xy), Some(yz), Some(xz)) = (x.common_prefix(y), y.common_prefix(z), x.common_prefix(z)) else {
        return 0;
    };
    let back = |r: &Ray, k: usize| -r.at(k - 1);
    if xy == yz && yz == xz {
        order.orient(x.at(xy), y.at(xy), z.at(xy))
    } else if xy > yz.max(xz) {
        order.orient(x.at(xy), y.at(xy), back(x, xy))
    } else if yz > xy.max(xz) {
        order.orient(back(y, yz), y.at(yz), z.at(yz))
    } else {
        order.orient(x.at(xz), back(x, xz), z.at(xz))
    }
}

/// `½(cord(α⁺, β⁺, α⁻) − cord(α⁺, β⁻, α⁻))` for cyclically reduced words taken
/// in the given rotation: nonzero exactly when the axes through the base
/// vertex have linked endpoints.
pub fn cross(alpha: &[Letter], beta: &[Letter], order: &CyclicOrder) -> Result<i8> {
    if alpha.is_empty() || beta.is_empty() {
        return Err(Error::TrivialWord);
    }
    let (ap, am) = (Ray::forward(alpha), Ray::backward(alpha));
    let (bp, bm) = (Ray::forward(beta), Ray::backward(beta));
    let twice = cord(&ap, &bp, &am, order) - cord(&ap, &bm, &am, order);
    Ok(twice / 2)
}

/// One plus the number of edges shared by the axes of two cyclically reduced
/// primitive words through the base vertex; `None` stands for infinity (the
/// axes coincide).
pub fn val(alpha: &[Letter], beta: &[Letter]) -> Result<Option<usize>> {
    for w in [alpha, beta] {
        if w.is_empty() {
            return Err(Error::TrivialWord);
        }
        if primitive_root(&CyclicWord::from_reduced(w))?.1 != 1 {
            return Err(Error::NotPrimitive);
        }
    }
    Ok(shared_vertices(alpha, beta))
}

fn shared_vertices(alpha: &[Letter], beta: &[Letter]) -> Option<usize> {
    let (ap, am) = (Ray::forward(alpha), Ray::backward(alpha));
    let (bp, bm) = (Ray::forward(beta), Ray::backward(beta));
    let mut total = 1;
    for (a, b) in [(&ap, &bp), (&ap, &bm), (&am, &bp), (&am, &bm)] {
        total += a.common_prefix(b)?;
    }
    Some(total)
}

/// Intersection number of two primitive cyclically reduced classes as the
/// exact rational double sum over rotation pairs.
fn primitive_intersection(alpha: &[Letter], beta: &[Letter], order: &CyclicOrder) -> u64 {
    let mut sum = Ratio::<u64>::from_integer(0);
    for i in 0..alpha.len() {
        let a = rotate(alpha, i);
        for j in 0..beta.len() {
            let b = rotate(beta, j);
            let Some(v) = shared_vertices(&a, &b) else {
                continue;
            };
            let c = cross(&a, &b, order).expect("nonempty words");
            if c != 0 {
                sum += Ratio::new(1, v as u64);
            }
        }
    }
    assert!(sum.is_integer(), "cross/val sum {sum} is not an integer");
    sum.to_integer()
}

/// The geometric intersection number `ti(α, β)` of two free homotopy classes.
pub fn intersection_number(alpha: &[Letter], beta: &[Letter], order: &CyclicOrder) -> Result<u64> {
    let (ca, _) = cyclic_reduce(alpha);
    let (cb, _) = cyclic_reduce(beta);
    if ca.is_empty() || cb.is_empty() {
        return Err(Error::TrivialWord);
    }
    let (ra, a) = primitive_root(&ca)?;
    let (rb, b) = primitive_root(&cb)?;
    Ok((a * b) as u64 * primitive_intersection(ra.letters(), rb.letters(), order))
}

/// The self-intersection number `si(α)`; zero for the trivial class.
pub fn self_intersection_word(alpha: &[Letter], order: &CyclicOrder) -> u64 {
    let (c, _) = cyclic_reduce(alpha);
    if c.is_empty() {
        return 0;
    }
    let (root, n) = primitive_root(&c).expect("nonempty");
    let n = n as u64;
    let ti = primitive_intersection(root.letters(), root.letters(), order);
    debug_assert!(ti.is_multiple_of(2));
    n * n * (ti / 2) + (n - 1)
}

/// The `|cross|` and `val` tables over all rotation pairs, as used in the
/// double sum. `None` in the val table stands for infinity.
pub fn cross_val_tables(
    alpha: &[Letter],
    beta: &[Letter],
    order: &CyclicOrder,
) -> (Vec<Vec<u8>>, Vec<Vec<Option<usize>>>) {
    let mut crosses = vec![vec![0; beta.len()]; alpha.len()];
    let mut vals = vec![vec![None; beta.len()]; alpha.len()];
    for i in 0..alpha.len() {
        let a = rotate(alpha, i);
        for j in 0..beta.len() {
            let b = rotate(beta, j);
            crosses[i][j] = cross(&a, &b, order).expect("nonempty").unsigned_abs();
            vals[i][j] = shared_vertices(&a, &b);
        }
    }
    (crosses, vals)
}

/// Parses letters written as `a`/`A`, `b`/`B`, …; whitespace and `·` are ignored.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '·' && *c != '.')
        .map(|c| match c {
            'a'..='z' => Ok(letter(c as usize - 'a' as usize, true)),
            'A'..='Z' => Ok(letter(c as usize - 'A' as usize, false)),
            _ => Err(Error::Parse(format!("unexpected character {c:?} in word"))),
        })
        .collect()
}

/// Formats a word as letters when every generator is below 26, and as a
/// bracketed integer list otherwise.
pub fn format_word(w: &[Letter]) -> String {
    if w.iter().all(|&l| generator(l) < 26) {
        w.iter()
            .map(|&l| {
                let c = (b'a' + generator(l) as u8) as char;
                if l > 0 {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    } else {
        format!("{w:?}")
    }
}

/// Orders cyclic words by length, then lexicographically on letter keys.
pub fn compare_cyclic(a: &CyclicWord, b: &CyclicWord) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.letters().iter().map(|&l| letter_key(l)).cmp(b.letters().iter().map(|&l| letter_key(l))))
}
