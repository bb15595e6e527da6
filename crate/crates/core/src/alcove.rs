//! Affine Weyl group elements as alcoves.
//!
//! An element `w` is stored through the integer vector `b_w`: for each
//! positive root `beta`, `b_w(beta)` is the integer `k` with
//! `k < <beta, v> < k + 1` on the alcove `A0 . w`. The group acts on the
//! right by fixed affine reflections, so `A0 . (w s) = (A0 . w) . s`.
//!
//! Generators are numbered `0..rank` for the finite simple reflections and
//! `rank` for the affine reflection in `H_{alpha~, 1}`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// A word over the generators, as generator ids.
pub type Word = Vec<usize>;

/// Space-separated rendering of a word; the empty word is `""`.
pub fn format_word(word: &[usize]) -> String {
    word.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses whitespace- or comma-separated generator ids.
pub fn parse_word(text: &str) -> std::result::Result<Word, std::num::ParseIntError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Finite,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub id: usize,
    pub kind: GeneratorKind,
}

/// A subset of the generators as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GeneratorSet(pub u32);

impl GeneratorSet {
    pub fn empty() -> Self {
        GeneratorSet(0)
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_subset(self, other: GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GeneratorSet::empty();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

/// An element of the affine Weyl group.
///
/// Equality and hashing only look at the `b` vector; the witness word is
/// carried along for display and for left-sided operations.
#[derive(Debug, Clone)]
pub struct Element {
    b: Vec<i32>,
    witness: Option<Word>,
}

impl Element {
    pub fn from_b(b: Vec<i32>) -> Self {
        Element { b, witness: None }
    }

    pub fn b(&self) -> &[i32] {
        &self.b
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.witness.as_deref()
    }

    pub fn with_witness(mut self, word: Word) -> Self {
        self.witness = Some(word);
        self
    }

    /// Number of hyperplanes separating `A0` from `A0 . w`.
    pub fn length(&self) -> usize {
        self.b.iter().map(|x| x.unsigned_abs() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.b.iter().all(|&x| x == 0)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.b == other.b
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.b.hash(state);
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) if w.is_empty() => write!(f, "e"),
            Some(w) => write!(f, "{}", format_word(w)),
            None => write!(f, "b{:?}", self.b),
        }
    }
}

/// The affine Weyl group attached to a root system.
#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    rs: RootSystem,
    complements: Vec<Option<usize>>,
}

impl AffineWeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let complements = (0..rs.num_positive_roots())
            .map(|b| {
                if rs.highest_root_coefficient(b) == 1 {
                    rs.highest_root_complement(b)
                } else {
                    None
                }
            })
            .collect();
        AffineWeylGroup { rs, complements }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `|S~| = rank + 1`.
    pub fn num_generators(&self) -> usize {
        self.rs.rank() + 1
    }

    pub fn affine_generator(&self) -> usize {
        self.rs.rank()
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.num_generators())
            .map(|id| Generator {
                id,
                kind: if id == self.affine_generator() {
                    GeneratorKind::Affine
                } else {
                    GeneratorKind::Finite
                },
            })
            .collect()
    }

    pub fn identity(&self) -> Element {
        Element {
            b: vec![0; self.rs.num_positive_roots()],
            witness: Some(Vec::new()),
        }
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        let n = self.num_generators();
        match word.iter().find(|&&s| s >= n) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: n,
            }),
            None => Ok(()),
        }
    }

    /// `w . s`, by updating the `b` vector root strip by root strip.
    pub fn right_multiply(&self, elem: &Element, s: usize) -> Element {
        let rs = &self.rs;
        let m = rs.num_positive_roots();
        let mut b = vec![0i32; m];
        if s < rs.rank() {
            for (beta, slot) in b.iter_mut().enumerate() {
                // <beta, v.s> = <beta.s, v>
                let img = rs.reflect_root(beta, s);
                *slot = if img.positive {
                    elem.b[img.index]
                } else {
                    -elem.b[img.index] - 1
                };
            }
        } else {
            assert_eq!(s, rs.rank(), "generator out of range");
            let top = rs.highest_root_index();
            for (beta, slot) in b.iter_mut().enumerate() {
                // <beta, v.s> = <beta, v> - c (<alpha~, v> - 1)
                *slot = match rs.highest_root_coefficient(beta) {
                    0 => elem.b[beta],
                    2 => 1 - elem.b[top],
                    _ => -elem.b[self.complements[beta].expect("alpha~ - beta is a root")],
                };
            }
        }
        let witness = elem.witness.as_ref().map(|w| {
            let mut w = w.clone();
            w.push(s);
            w
        });
        Element { b, witness }
    }

    /// Product of a word, starting from the identity.
    pub fn evaluate(&self, word: &[usize]) -> Result<Element> {
        self.check_word(word)?;
        let mut e = self.identity();
        for &s in word {
            e = self.right_multiply(&e, s);
        }
        Ok(e)
    }

    pub fn length(&self, elem: &Element) -> usize {
        elem.length()
    }

    /// `{ s : l(w s) < l(w) }`.
    pub fn right_descents(&self, elem: &Element) -> GeneratorSet {
        let l = elem.length();
        (0..self.num_generators())
            .filter(|&s| self.right_multiply(elem, s).length() < l)
            .collect()
    }

    /// `s . w`, evaluated through a word for `w`.
    pub fn left_multiply(&self, s: usize, elem: &Element) -> Element {
        let word = self.word_of(elem);
        let mut full = Vec::with_capacity(word.len() + 1);
        full.push(s);
        full.extend_from_slice(&word);
        let mut e = self.identity();
        for &t in &full {
            e = self.right_multiply(&e, t);
        }
        e
    }

    /// `{ s : l(s w) < l(w) }`.
    pub fn left_descents(&self, elem: &Element) -> GeneratorSet {
        let l = elem.length();
        (0..self.num_generators())
            .filter(|&s| self.left_multiply(s, elem).length() < l)
            .collect()
    }

    /// A reduced word for `w`, found by peeling off right descents.
    pub fn reduced_word(&self, elem: &Element) -> Word {
        let mut cur = Element::from_b(elem.b.clone());
        let mut rev = Vec::with_capacity(elem.length());
        while !cur.is_identity() {
            let l = cur.length();
            let (s, next) = (0..self.num_generators())
                .map(|s| (s, self.right_multiply(&cur, s)))
                .find(|(_, e)| e.length() < l)
                .expect("a non-identity element has a right descent");
            rev.push(s);
            cur = next;
        }
        rev.reverse();
        rev
    }

    /// The witness word if present, otherwise a freshly computed reduced word.
    pub fn word_of(&self, elem: &Element) -> Word {
        match &elem.witness {
            Some(w) => w.clone(),
            None => self.reduced_word(elem),
        }
    }

    pub fn inverse(&self, elem: &Element) -> Element {
        let mut word = self.word_of(elem);
        word.reverse();
        let mut e = self.identity();
        for &s in &word {
            e = self.right_multiply(&e, s);
        }
        e
    }

    /// A word is reduced iff its product has length equal to the word length.
    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        let mut e = self.identity();
        for &s in word {
            let next = self.right_multiply(&e, s);
            if next.length() < e.length() {
                return Ok(false);
            }
            e = next;
        }
        Ok(true)
    }

    /// Alternative reducedness test: the hyperplanes
    /// `H_{t_k}, H_{t_{k-1}} . t_k, ..., H_{t_1} . t_2 ... t_k`
    /// must be pairwise distinct and each must separate `A0` from `A0 . w`.
    ///
    /// Uses only hyperplane images and the geometric realization, never the
    /// `b`-vector update rules.
    pub fn is_reduced_by_hyperplanes(&self, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        let geo = geometry::Realization::new(&self.rs);
        let point = geo.word_map(word).apply(&geo.barycenter());
        let mut seen: Vec<geometry::Hyperplane> = Vec::with_capacity(word.len());
        for j in 0..word.len() {
            let mut h = geo.wall(word[j]);
            for &t in &word[j + 1..] {
                h = geo.hyperplane_image(h, t);
            }
            if seen.contains(&h) || !geo.separates_from_a0(h, &point) {
                return Ok(false);
            }
            seen.push(h);
        }
        Ok(true)
    }

    /// All elements of length at most `max_len`, in shortlex order of their
    /// lexicographically least reduced words.
    pub fn ball(&self, max_len: usize) -> Ball {
        Ball::new(self.clone(), max_len)
    }
}

/// Exact geometric realization of the affine action, independent of the
/// `b`-vector bookkeeping.
pub mod geometry {
    use super::*;

    /// An affine hyperplane `H_{beta, k} = { v : <beta, v> = k }` with `beta` positive.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct Hyperplane {
        pub root: usize,
        pub level: i64,
    }

    /// `x -> M x + t` on fundamental coweight coordinates.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct AffineMap {
        pub linear: Vec<Vec<i64>>,
        pub translation: Vec<i64>,
    }

    impl AffineMap {
        pub fn identity(rank: usize) -> Self {
            let linear = (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect();
            AffineMap {
                linear,
                translation: vec![0; rank],
            }
        }

        pub fn apply(&self, x: &[Rational64]) -> Vec<Rational64> {
            self.linear
                .iter()
                .zip(&self.translation)
                .map(|(row, &t)| {
                    row.iter()
                        .zip(x)
                        .fold(Rational64::from_integer(t), |acc, (&m, xi)| acc + *xi * m)
                })
                .collect()
        }

        /// The map "first `self`, then `next`".
        pub fn then(&self, next: &AffineMap) -> AffineMap {
            let r = self.translation.len();
            let linear = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (0..r).map(|k| next.linear[i][k] * self.linear[k][j]).sum())
                        .collect()
                })
                .collect();
            let translation = (0..r)
                .map(|i| {
                    next.translation[i]
                        + (0..r)
                            .map(|k| next.linear[i][k] * self.translation[k])
                            .sum::<i64>()
                })
                .collect();
            AffineMap {
                linear,
                translation,
            }
        }
    }

    /// Generator reflections as affine maps, plus the fundamental alcove.
    #[derive(Debug, Clone)]
    pub struct Realization<'a> {
        rs: &'a RootSystem,
        reflections: Vec<AffineMap>,
    }

    impl<'a> Realization<'a> {
        pub fn new(rs: &'a RootSystem) -> Self {
            let rank = rs.rank();
            let reflections = (0..=rank)
                .map(|s| {
                    let h = wall_of(rs, s);
                    // v -> v - (<beta, v> - k) beta^vee
                    let a = rs.coroot_pairings(h.root);
                    let c = rs.positive_root(h.root);
                    let linear = (0..rank)
                        .map(|i| (0..rank).map(|j| i64::from(i == j) - a[i] * c[j]).collect())
                        .collect();
                    let translation = (0..rank).map(|i| h.level * a[i]).collect();
                    AffineMap {
                        linear,
                        translation,
                    }
                })
                .collect();
            Realization { rs, reflections }
        }

        pub fn root_system(&self) -> &RootSystem {
            self.rs
        }

        pub fn reflection(&self, s: usize) -> &AffineMap {
            &self.reflections[s]
        }

        /// The map `v -> v . w` for the product of `word`.
        pub fn word_map(&self, word: &[usize]) -> AffineMap {
            word.iter()
                .fold(AffineMap::identity(self.rs.rank()), |acc, &s| {
                    acc.then(&self.reflections[s])
                })
        }

        /// Vertices of `A0`: the origin and `omega_i^vee / m_i`.
        pub fn a0_vertices(&self) -> Vec<Vec<Rational64>> {
            let r = self.rs.rank();
            let marks = self.rs.marks();
            let mut out = vec![vec![Rational64::zero(); r]];
            for i in 0..r {
                let mut v = vec![Rational64::zero(); r];
                v[i] = Rational64::new(1, marks[i]);
                out.push(v);
            }
            out
        }

        /// Average of the vertices of `A0`; no root pairs integrally with it.
        pub fn barycenter(&self) -> Vec<Rational64> {
            let verts = self.a0_vertices();
            let n = verts.len() as i64;
            let r = self.rs.rank();
            (0..r)
                .map(|i| verts.iter().fold(Rational64::zero(), |acc, v| acc + v[i]) / n)
                .collect()
        }

        /// Floors of the root pairings at an interior point.
        pub fn strip_indices(&self, point: &[Rational64]) -> Vec<i32> {
            (0..self.rs.num_positive_roots())
                .map(|beta| {
                    let p = self.rs.pairing(beta, point);
                    debug_assert!(!p.is_integer(), "point lies on a hyperplane");
                    p.floor().to_integer() as i32
                })
                .collect()
        }

        /// `b` vector of the product of `word`, computed geometrically.
        pub fn b_vector(&self, word: &[usize]) -> Vec<i32> {
            self.strip_indices(&self.word_map(word).apply(&self.barycenter()))
        }

        pub fn wall(&self, s: usize) -> Hyperplane {
            wall_of(self.rs, s)
        }

        /// `H . s` for a generator `s`.
        pub fn hyperplane_image(&self, h: Hyperplane, s: usize) -> Hyperplane {
            let rs = self.rs;
            if s < rs.rank() {
                let img = rs.reflect_root(h.root, s);
                if img.positive {
                    Hyperplane {
                        root: img.index,
                        level: h.level,
                    }
                } else {
                    Hyperplane {
                        root: img.index,
                        level: -h.level,
                    }
                }
            } else {
                // <beta, u.s> = <beta - c alpha~, u> + c
                let c = rs.highest_root_coefficient(h.root);
                match c {
                    0 => h,
                    2 => Hyperplane {
                        root: h.root,
                        level: 2 - h.level,
                    },
                    _ => Hyperplane {
                        root: rs.highest_root_complement(h.root).unwrap(),
                        level: 1 - h.level,
                    },
                }
            }
        }

        /// Whether `h` strictly separates `A0` from an interior point.
        pub fn separates_from_a0(&self, h: Hyperplane, point: &[Rational64]) -> bool {
            let k = Rational64::from_integer(h.level);
            let a0_side = self.rs.pairing(h.root, &self.barycenter()) > k;
            let p_side = self.rs.pairing(h.root, point) > k;
            a0_side != p_side
        }

        /// Whether a generator's wall has `A0` and the point on the same side.
        pub fn same_side_as_a0(&self, s: usize, point: &[Rational64]) -> bool {
            !self.separates_from_a0(self.wall(s), point)
        }
    }

    fn wall_of(rs: &RootSystem, s: usize) -> Hyperplane {
        if s < rs.rank() {
            Hyperplane { root: s, level: 0 }
        } else {
            Hyperplane {
                root: rs.highest_root_index(),
                level: 1,
            }
        }
    }
}

/// A length-bounded ball around the identity with multiplication tables.
#[derive(Debug, Clone)]
pub struct Ball {
    group: AffineWeylGroup,
    radius: usize,
    elements: Vec<Element>,
    index: HashMap<Vec<i32>, usize>,
    /// `layer_starts[k]` is the first index of length `k`; one extra sentinel.
    layer_starts: Vec<usize>,
    right: Vec<Vec<Option<usize>>>,
    left: Vec<Vec<Option<usize>>>,
    right_desc: Vec<GeneratorSet>,
    left_desc: Vec<GeneratorSet>,
    inverse: Vec<usize>,
}

impl Ball {
    fn new(group: AffineWeylGroup, radius: usize) -> Self {
        let n = group.num_generators();
        let mut elements = vec![group.identity()];
        let mut index: HashMap<Vec<i32>, usize> = HashMap::new();
        index.insert(elements[0].b.clone(), 0);
        let mut layer_starts = vec![0, 1];
        for len in 0..radius {
            let (lo, hi) = (layer_starts[len], layer_starts[len + 1]);
            for i in lo..hi {
                for s in 0..n {
                    let y = group.right_multiply(&elements[i], s);
                    if y.length() == len + 1 && !index.contains_key(&y.b) {
                        index.insert(y.b.clone(), elements.len());
                        elements.push(y);
                    }
                }
            }
            layer_starts.push(elements.len());
        }

        let lookup = |e: &Element| index.get(&e.b).copied();
        let right: Vec<Vec<Option<usize>>> = elements
            .iter()
            .map(|x| {
                (0..n)
                    .map(|s| lookup(&group.right_multiply(x, s)))
                    .collect()
            })
            .collect();
        let left: Vec<Vec<Option<usize>>> = elements
            .iter()
            .map(|x| (0..n).map(|s| lookup(&group.left_multiply(s, x))).collect())
            .collect();
        let right_desc = elements.iter().map(|x| group.right_descents(x)).collect();
        let left_desc = (0..elements.len())
            .map(|i| {
                let l = elements[i].length();
                (0..n)
                    .filter(|&s| match left[i][s] {
                        Some(j) => elements[j].length() < l,
                        None => false,
                    })
                    .collect()
            })
            .collect();
        let inverse = elements
            .iter()
            .map(|x| lookup(&group.inverse(x)).expect("inverse has the same length"))
            .collect();

        Ball {
            group,
            radius,
            elements,
            index,
            layer_starts,
            right,
            left,
            right_desc,
            left_desc,
            inverse,
        }
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn word(&self, i: usize) -> &[usize] {
        self.elements[i]
            .witness()
            .expect("ball elements carry witnesses")
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].length()
    }

    pub fn index_of(&self, elem: &Element) -> Option<usize> {
        self.index.get(&elem.b).copied()
    }

    /// Index of the product of a word, if it lands in the ball.
    pub fn index_of_word(&self, word: &[usize]) -> Result<Option<usize>> {
        Ok(self.index_of(&self.group.evaluate(word)?))
    }

    /// Number of elements of length at most `len`; these are the first ones.
    pub fn count_upto(&self, len: usize) -> usize {
        self.layer_starts[len.min(self.radius) + 1]
    }

    /// Number of elements of each length `0..=radius`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layer_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn right_mul(&self, i: usize, s: usize) -> Option<usize> {
        self.right[i][s]
    }

    pub fn left_mul(&self, i: usize, s: usize) -> Option<usize> {
        self.left[i][s]
    }

    pub fn right_descents(&self, i: usize) -> GeneratorSet {
        self.right_desc[i]
    }

    pub fn left_descents(&self, i: usize) -> GeneratorSet {
        self.left_desc[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Bruhat order on the ball via the subword property.
    pub fn bruhat_order(&self) -> BruhatOrder {
        BruhatOrder::new(self)
    }
}

/// For each `w`, the set of `u <= w`, as a bitset over ball indices.
///
/// Built from the subword property: with `w = v s` the witness word,
/// `[e, w] = [e, v] ∪ [e, v] . s`.
#[derive(Debug, Clone)]
pub struct BruhatOrder {
    words: usize,
    below: Vec<Vec<u64>>,
}

impl BruhatOrder {
    fn new(ball: &Ball) -> Self {
        let n = ball.len();
        let words = n.div_ceil(64);
        let mut below: Vec<Vec<u64>> = Vec::with_capacity(n);
        for w in 0..n {
            let mut set = vec![0u64; words];
            set[w / 64] |= 1 << (w % 64);
            if w > 0 {
                let word = ball.word(w);
                let s = *word.last().unwrap();
                let v = ball
                    .index_of_word(&word[..word.len() - 1])
                    .unwrap()
                    .expect("prefix is in the ball");
                for x in iter_bits(&below[v]) {
                    set[x / 64] |= 1 << (x % 64);
                    let xs = ball
                        .right_mul(x, s)
                        .expect("subword products stay in the ball");
                    set[xs / 64] |= 1 << (xs % 64);
                }
            }
            below.push(set);
        }
        BruhatOrder { words, below }
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.below[w][u / 64] & (1 << (u % 64)) != 0
    }

    /// Indices `u <= w` in increasing order.
    pub fn below(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.below[w])
    }

    pub fn interval_size(&self, w: usize) -> usize {
        debug_assert_eq!(self.below[w].len(), self.words);
        self.below[w].iter().map(|x| x.count_ones() as usize).sum()
    }
}

fn iter_bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(k, &chunk)| {
        let mut c = chunk;
        std::iter::from_fn(move || {
            if c == 0 {
                None
            } else {
                let t = c.trailing_zeros() as usize;
                c &= c - 1;
                Some(k * 64 + t)
            }
        })
    })
}
