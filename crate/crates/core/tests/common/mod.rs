//! Independent oracles shared by the integration tests.
//!
//! The affine Weyl group is realized here on affine roots `beta + k delta`,
//! with simple roots and the highest root written out by hand. Nothing in
//! this module goes through the library's alcove coordinates.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use affine_automata::{Ball, Family};

pub type AffineRoot = (Vec<i64>, i64);

#[derive(Debug, Clone)]
pub struct RootOracle {
    gram: Vec<Vec<i64>>,
    theta: Vec<i64>,
}

impl RootOracle {
    pub fn new(family: Family, rank: usize) -> Self {
        let (gram, theta): (Vec<Vec<i64>>, Vec<i64>) = match (family, rank) {
            (Family::A, 1) => (vec![vec![2]], vec![1]),
            (Family::A, 2) => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            (Family::A, 3) => (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
                vec![1, 1, 1],
            ),
            (Family::B, 2) => (vec![vec![2, -1], vec![-1, 1]], vec![1, 2]),
            (Family::C, 2) => (vec![vec![2, -2], vec![-2, 4]], vec![2, 1]),
            (Family::G, 2) => (vec![vec![2, -3], vec![-3, 6]], vec![3, 2]),
            (Family::B, 3) => (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]],
                vec![1, 2, 2],
            ),
            (Family::C, 3) => (
                vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -2, 4]],
                vec![2, 2, 1],
            ),
            other => panic!("no oracle data for {other:?}"),
        };
        RootOracle { gram, theta }
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    fn coroot_pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let num = 2 * self.form(beta, gamma);
        let den = self.form(gamma, gamma);
        assert_eq!(num % den, 0);
        num / den
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn simple(&self, i: usize) -> AffineRoot {
        if i < self.rank() {
            (self.unit(i), 0)
        } else {
            (self.theta.iter().map(|c| -c).collect(), 1)
        }
    }

    pub fn reflect(&self, i: usize, (beta, k): &AffineRoot) -> AffineRoot {
        if i < self.rank() {
            let a = self.unit(i);
            let c = self.coroot_pairing(beta, &a);
            let mut out = beta.clone();
            out[i] -= c;
            (out, *k)
        } else {
            let c = self.coroot_pairing(beta, &self.theta);
            let out = beta
                .iter()
                .zip(&self.theta)
                .map(|(b, t)| b - c * t)
                .collect();
            (out, k + c)
        }
    }

    pub fn is_positive((beta, k): &AffineRoot) -> bool {
        *k > 0 || (*k == 0 && beta.iter().all(|&c| c >= 0))
    }

    /// `w(root)` for the word `w`.
    pub fn apply(&self, word: &[usize], root: &AffineRoot) -> AffineRoot {
        word.iter()
            .rev()
            .fold(root.clone(), |r, &s| self.reflect(s, &r))
    }

    /// `w s > w` iff `w(alpha_s) > 0`, checked at every prefix.
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        (0..word.len()).all(|j| Self::is_positive(&self.apply(&word[..j], &self.simple(word[j]))))
    }

    /// A faithful fingerprint of the group element: images of all simple roots.
    pub fn key(&self, word: &[usize]) -> Vec<AffineRoot> {
        (0..=self.rank())
            .map(|i| self.apply(word, &self.simple(i)))
            .collect()
    }

    /// Every reduced word of length at most `max_len`.
    pub fn reduced_words(&self, max_len: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut stack = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() < max_len {
                for s in 0..=self.rank() {
                    let pos = Self::is_positive(&self.apply(&w, &self.simple(s)));
                    if pos {
                        let mut ws = w.clone();
                        ws.push(s);
                        stack.push(ws);
                    }
                }
            }
            out.insert(w);
        }
        out
    }

    /// Number of elements of each length up to `max_len`, by breadth-first search.
    pub fn layer_sizes(&self, max_len: usize) -> Vec<usize> {
        let mut seen: HashSet<Vec<AffineRoot>> = HashSet::new();
        let mut queue = VecDeque::from([Vec::<usize>::new()]);
        seen.insert(self.key(&[]));
        let mut sizes = vec![0; max_len + 1];
        while let Some(w) = queue.pop_front() {
            sizes[w.len()] += 1;
            if w.len() == max_len {
                continue;
            }
            for s in 0..=self.rank() {
                let mut ws = w.clone();
                ws.push(s);
                if self.is_reduced(&ws) && seen.insert(self.key(&ws)) {
                    queue.push_back(ws);
                }
            }
        }
        sizes
    }
}

/// Bruhat order by the subword property: `u <= w` iff some subword of a
/// reduced word of `w` is a reduced word for `u`.
pub fn bruhat_by_subwords(ball: &Ball, w: usize) -> BTreeSet<usize> {
    let word = ball.word(w);
    let group = ball.group();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = (0..word.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| word[i])
            .collect();
        let e = group.evaluate(&sub).unwrap();
        if let Some(i) = ball.index_of(&e) {
            out.insert(i);
        }
    }
    out
}

type Poly = Vec<i64>;

fn trimmed(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &[i64], b: &[i64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn add_into(acc: &mut Poly, p: &[i64]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i] += c;
    }
}

/// Kazhdan-Lusztig polynomials from R-polynomials and the inversion
/// formula `q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<y<=w} R_{x,y} P_{y,w}`.
/// Uses only multiplication and lengths from the ball.
pub fn kl_by_r_polynomials(ball: &Ball) -> HashMap<(usize, usize), Poly> {
    let n = ball.len();
    // r[w][x] = R_{x,w}, via a right descent s of w:
    // R_{x,w} = R_{xs,ws} if xs < x, else (q-1) R_{x,ws} + q R_{xs,ws}
    let mut r: Vec<HashMap<usize, Poly>> = Vec::with_capacity(n);
    for w in 0..n {
        let mut col = HashMap::new();
        if w == 0 {
            col.insert(0, vec![1]);
            r.push(col);
            continue;
        }
        let s = ball.right_descents(w).iter().next().unwrap();
        let ws = ball.right_mul(w, s).unwrap();
        for x in 0..n {
            let (lx, lw) = (ball.length(x), ball.length(w));
            if lx > lw || (lx == lw && x != w) {
                continue;
            }
            if x == w {
                col.insert(x, vec![1]);
                continue;
            }
            let xs = ball.right_mul(x, s).unwrap();
            let get = |a: usize| r[ws].get(&a).cloned().unwrap_or_default();
            let p = if ball.length(xs) < lx {
                get(xs)
            } else {
                let mut p = mul(&[-1, 1], &get(x));
                add_into(&mut p, &mul(&[0, 1], &get(xs)));
                trimmed(p)
            };
            if !p.is_empty() {
                col.insert(x, p);
            }
        }
        r.push(col);
    }

    let mut p: HashMap<(usize, usize), Poly> = HashMap::new();
    for w in 0..n {
        let lw = ball.length(w);
        p.insert((w, w), vec![1]);
        // longer x first, so every P_{y,w} with y > x is already known
        for x in (0..w).rev() {
            let lx = ball.length(x);
            if lx >= lw {
                continue;
            }
            let mut rhs = Poly::new();
            for y in x + 1..=w {
                if let (Some(rxy), Some(pyw)) = (r[y].get(&x), p.get(&(y, w))) {
                    add_into(&mut rhs, &mul(rxy, pyw));
                }
            }
            let d = lw - lx;
            let low: Poly = rhs.iter().take((d - 1) / 2 + 1).map(|c| -c).collect();
            let low = trimmed(low);
            if !low.is_empty() {
                p.insert((x, w), low);
            }
        }
    }
    p
}

pub fn to_strings(words: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<String> {
    words
        .into_iter()
        .map(|w| {
            w.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}
