//! Irreducible reduced root systems with exact integer/rational data.
//!
//! Roots are stored as integer coefficient vectors over the simple roots.
//! Points of the ambient space `V` are written in the fundamental coweight
//! basis, so that the coordinate `x_i` of a point is exactly `<alpha_i, x>`.
//! The pairing of any root with a point is then an integer combination of
//! the point's coordinates, and every membership test in an alcove or a
//! root strip is an exact rational comparison.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan-Killing family of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A root of the system given by its index in the positive-root list and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub positive: bool,
}

/// Root length class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLength {
    Long,
    Short,
}

/// An irreducible reduced root system.
///
/// Positive roots are ordered by height, then by coefficient vector in
/// descending lexicographic order. With that order the simple roots
/// `alpha_1, ..., alpha_r` sit at indices `0..r`, and the highest root is last.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// Symmetric integer Gram matrix of the simple roots.
    simple_gram: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    highest_root_index: usize,
    /// `<beta_i, beta_j>` over positive roots.
    gram: Vec<Vec<i64>>,
    coxeter_number: usize,
    lengths: Vec<RootLength>,
    /// `reflections[beta][s]` is `beta . s_s` for finite simple reflections.
    reflections: Vec<Vec<SignedRoot>>,
    /// `coroot_pairings[beta][i] = 2 <alpha_i, beta> / <beta, beta>`.
    coroot_pairings: Vec<Vec<i64>>,
    highest_coefficients: Vec<i64>,
}

impl RootSystem {
    /// Builds the root system of the given Cartan type.
    ///
    /// Supported: `A_n (n >= 1)`, `B_n (n >= 2)`, `C_n (n >= 2)`,
    /// `D_n (n >= 4)`, `E_6`, `E_7`, `E_8`, `F_4`, `G_2`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let simple_gram = simple_gram(family, rank)?;
        Ok(Self::from_simple_gram(family, rank, simple_gram))
    }

    fn from_simple_gram(family: Family, rank: usize, simple_gram: Vec<Vec<i64>>) -> Self {
        let all = root_closure(&simple_gram);
        let mut positive: Vec<Vec<i64>> = all
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let m = positive.len();
        let form = |a: &[i64], b: &[i64]| -> i64 {
            let mut acc = 0;
            for i in 0..rank {
                for j in 0..rank {
                    acc += a[i] * simple_gram[i][j] * b[j];
                }
            }
            acc
        };

        let gram: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| form(&positive[i], &positive[j])).collect())
            .collect();

        let highest_root_index = m - 1;
        let height: i64 = positive[highest_root_index].iter().sum();
        let coxeter_number = (height + 1) as usize;

        let max_len = (0..m).map(|i| gram[i][i]).max().unwrap();
        let lengths = (0..m)
            .map(|i| {
                if gram[i][i] == max_len {
                    RootLength::Long
                } else {
                    RootLength::Short
                }
            })
            .collect();

        let unit = |i: usize| -> Vec<i64> {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        };
        let coroot_pairings: Vec<Vec<i64>> = (0..m)
            .map(|b| {
                (0..rank)
                    .map(|i| 2 * form(&unit(i), &positive[b]) / gram[b][b])
                    .collect()
            })
            .collect();

        let lookup = |v: &[i64]| -> SignedRoot {
            if let Some(index) = positive.iter().position(|p| p == v) {
                return SignedRoot {
                    index,
                    positive: true,
                };
            }
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            let index = positive
                .iter()
                .position(|p| *p == neg)
                .expect("root closure is closed under simple reflections");
            SignedRoot {
                index,
                positive: false,
            }
        };
        let reflections: Vec<Vec<SignedRoot>> = (0..m)
            .map(|b| {
                (0..rank)
                    .map(|s| {
                        // beta . s = beta - <beta, alpha_s^vee> alpha_s
                        let c = 2 * form(&positive[b], &unit(s)) / simple_gram[s][s];
                        let mut image = positive[b].clone();
                        image[s] -= c;
                        lookup(&image)
                    })
                    .collect()
            })
            .collect();

        let top = highest_root_index;
        let highest_coefficients = (0..m).map(|b| 2 * gram[b][top] / gram[top][top]).collect();

        RootSystem {
            family,
            rank,
            simple_gram,
            positive_roots: positive,
            highest_root_index,
            gram,
            coxeter_number,
            lengths,
            reflections,
            coroot_pairings,
            highest_coefficients,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short display name such as `G2`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Coefficients of a positive root over the simple roots.
    pub fn positive_root(&self, index: usize) -> &[i64] {
        &self.positive_roots[index]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Index of the simple root `alpha_i` in the positive-root list.
    pub fn simple_root_index(&self, i: usize) -> usize {
        debug_assert!(i < self.rank);
        i
    }

    /// Simple roots as coordinate vectors in the fundamental coweight basis.
    pub fn simple_roots(&self) -> Vec<Vec<Rational64>> {
        (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| Rational64::from_integer(self.simple_gram[i][j]))
                    .collect()
            })
            .collect()
    }

    pub fn simple_gram(&self) -> &[Vec<i64>] {
        &self.simple_gram
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root_index
    }

    /// Gram matrix `<beta_i, beta_j>` over positive roots.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    pub fn root_length(&self, index: usize) -> RootLength {
        self.lengths[index]
    }

    pub fn is_simply_laced(&self) -> bool {
        self.lengths.iter().all(|&l| l == RootLength::Long)
    }

    /// `beta . s` for a finite simple reflection `s`.
    pub fn reflect_root(&self, beta: usize, s: usize) -> SignedRoot {
        self.reflections[beta][s]
    }

    /// `2 <beta, alpha~> / <alpha~, alpha~>`; 2 for the highest root, 0 or 1 otherwise.
    pub fn highest_root_coefficient(&self, beta: usize) -> i64 {
        self.highest_coefficients[beta]
    }

    /// `2 <alpha_i, beta> / <beta, beta>` for every simple `alpha_i`.
    pub fn coroot_pairings(&self, beta: usize) -> &[i64] {
        &self.coroot_pairings[beta]
    }

    /// Coefficients of the highest root (the marks `m_i`).
    pub fn marks(&self) -> &[i64] {
        &self.positive_roots[self.highest_root_index]
    }

    /// Index of the positive root `alpha~ - beta`, if it is a root.
    pub fn highest_root_complement(&self, beta: usize) -> Option<usize> {
        let top = &self.positive_roots[self.highest_root_index];
        let diff: Vec<i64> = top
            .iter()
            .zip(&self.positive_roots[beta])
            .map(|(a, b)| a - b)
            .collect();
        self.positive_roots.iter().position(|p| *p == diff)
    }

    /// Exact value of `<beta, v>` for `v` in fundamental coweight coordinates.
    pub fn pairing(&self, beta: usize, v: &[Rational64]) -> Rational64 {
        assert_eq!(v.len(), self.rank, "vector has wrong dimension");
        self.positive_roots[beta]
            .iter()
            .zip(v)
            .fold(Rational64::zero(), |acc, (&c, x)| acc + *x * c)
    }

    /// `v . s_s` for a finite simple reflection, in coweight coordinates.
    pub fn reflect_point(&self, v: &[Rational64], s: usize) -> Vec<Rational64> {
        let a = self.pairing(s, v);
        let cs = &self.coroot_pairings[s];
        v.iter().zip(cs).map(|(x, &c)| *x - a * c).collect()
    }
}

fn simple_gram(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = || Error::InvalidType { family, rank };
    let mut g = vec![vec![0i64; rank]; rank];
    let chain = |g: &mut Vec<Vec<i64>>, n: usize| {
        for i in 0..n {
            g[i][i] = 2;
            if i + 1 < n {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
    };
    match family {
        Family::A => {
            if rank < 1 {
                return Err(invalid());
            }
            chain(&mut g, rank);
        }
        Family::B => {
            if rank < 2 {
                return Err(invalid());
            }
            chain(&mut g, rank);
            g[rank - 1][rank - 1] = 1;
        }
        Family::C => {
            if rank < 2 {
                return Err(invalid());
            }
            chain(&mut g, rank);
            g[rank - 1][rank - 1] = 4;
            g[rank - 2][rank - 1] = -2;
            g[rank - 1][rank - 2] = -2;
        }
        Family::D => {
            if rank < 4 {
                return Err(invalid());
            }
            chain(&mut g, rank - 1);
            g[rank - 1][rank - 1] = 2;
            g[rank - 3][rank - 1] = -1;
            g[rank - 1][rank - 3] = -1;
        }
        Family::E => {
            if !(6..=8).contains(&rank) {
                return Err(invalid());
            }
            // Bourbaki labels: 1-3-4-5-6-7-8 with 2 attached to 4.
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
            for i in 4..rank - 1 {
                edges.push((i, i + 1));
            }
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 2;
            }
            for (a, b) in edges {
                g[a][b] = -1;
                g[b][a] = -1;
            }
        }
        Family::F => {
            if rank != 4 {
                return Err(invalid());
            }
            g = vec![
                vec![4, -2, 0, 0],
                vec![-2, 4, -2, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ];
        }
        Family::G => {
            if rank != 2 {
                return Err(invalid());
            }
            g = vec![vec![2, -3], vec![-3, 6]];
        }
    }
    Ok(g)
}

/// All roots (both signs) as the closure of the simple roots under simple reflections.
fn root_closure(simple_gram: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let rank = simple_gram.len();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(r) = queue.pop() {
        if !roots.insert(r.clone()) {
            continue;
        }
        for s in 0..rank {
            let pair: i64 = (0..rank).map(|j| r[j] * simple_gram[j][s]).sum();
            let c = 2 * pair / simple_gram[s][s];
            let mut image = r.clone();
            image[s] -= c;
            if !roots.contains(&image) {
                queue.push(image);
            }
        }
    }
    roots
}
