//! Extended Shi arrangements and their regions.
//!
//! An arrangement is described by a bound `nu(beta) >= 0` per positive root;
//! it consists of the hyperplanes `H_{beta, k}` for `-nu(beta) <= k <= nu(beta) + 1`.
//! A region of the complement is a nonempty intersection of root strips, so
//! it is identified by its strip vector, which for an alcove with vector
//! `b` is the clamp of `b(beta)` into `[-nu(beta) - 1, nu(beta) + 1]`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alcove::{AffineWeylGroup, Element, Word};
use crate::error::{Error, Result};
use crate::rootsys::{RootLength, RootSystem};

/// Strip vector of a region, indexed by positive root.
pub type Strips = Vec<i32>;

/// Per-root bounds of an extended Shi arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ArrangementSpec {
    bounds: Vec<u32>,
}

impl ArrangementSpec {
    /// `H_N`: the same bound on every root.
    pub fn uniform(rs: &RootSystem, n: u32) -> Self {
        ArrangementSpec {
            bounds: vec![n; rs.num_positive_roots()],
        }
    }

    /// Bound `short` on short roots and `long` on long roots.
    pub fn by_length(rs: &RootSystem, short: u32, long: u32) -> Self {
        let bounds = (0..rs.num_positive_roots())
            .map(|b| match rs.root_length(b) {
                RootLength::Short => short,
                RootLength::Long => long,
            })
            .collect();
        ArrangementSpec { bounds }
    }

    /// `nu = 0` on short roots and `1` on long roots; `nu = 0` when simply laced.
    pub fn short0_long1(rs: &RootSystem) -> Self {
        if rs.is_simply_laced() {
            Self::uniform(rs, 0)
        } else {
            Self::by_length(rs, 0, 1)
        }
    }

    /// Arbitrary bounds, checked to be constant on each root length class.
    pub fn from_bounds(rs: &RootSystem, bounds: Vec<u32>) -> Result<Self> {
        let spec = Self::from_bounds_unchecked(rs, bounds)?;
        let mut per_class: HashMap<RootLength, u32> = HashMap::new();
        for (b, &nu) in spec.bounds.iter().enumerate() {
            if *per_class.entry(rs.root_length(b)).or_insert(nu) != nu {
                return Err(Error::NonConstantBounds);
            }
        }
        Ok(spec)
    }

    /// Arbitrary bounds without the length-class check. Such arrangements
    /// need not have property (*); useful to exhibit violations.
    pub fn from_bounds_unchecked(rs: &RootSystem, bounds: Vec<u32>) -> Result<Self> {
        if bounds.len() != rs.num_positive_roots() {
            return Err(Error::BoundsLength {
                got: bounds.len(),
                expected: rs.num_positive_roots(),
            });
        }
        Ok(ArrangementSpec { bounds })
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn bound(&self, beta: usize) -> u32 {
        self.bounds[beta]
    }

    /// Number of hyperplanes in the arrangement.
    pub fn num_hyperplanes(&self) -> usize {
        self.bounds.iter().map(|&n| 2 * n as usize + 2).sum()
    }

    /// Hyperplane levels `k` for root `beta`.
    pub fn levels(&self, beta: usize) -> std::ops::RangeInclusive<i64> {
        let n = i64::from(self.bounds[beta]);
        -n..=n + 1
    }

    /// The single bound if the arrangement is uniform.
    pub fn uniform_bound(&self) -> Option<u32> {
        let first = *self.bounds.first()?;
        self.bounds.iter().all(|&b| b == first).then_some(first)
    }

    /// Strip vector of the region containing the alcove of `elem`.
    pub fn region_of(&self, elem: &Element) -> Strips {
        self.clamp(elem.b())
    }

    pub fn clamp(&self, b: &[i32]) -> Strips {
        b.iter()
            .zip(&self.bounds)
            .map(|(&x, &n)| {
                let n = n as i32;
                x.clamp(-n - 1, n + 1)
            })
            .collect()
    }
}

impl fmt::Display for ArrangementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_bound() {
            Some(n) => write!(f, "N={n}"),
            None => write!(f, "nu={:?}", self.bounds),
        }
    }
}

/// A region of the arrangement together with an alcove inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub strips: Strips,
    pub witness: Element,
}

/// Whether the region lies on the same side of the wall `H_s` as `A0`.
pub fn same_side_as_a0(rs: &RootSystem, strips: &[i32], s: usize) -> bool {
    if s < rs.rank() {
        strips[s] >= 0
    } else {
        strips[rs.highest_root_index()] <= 0
    }
}

/// The region containing `R . s`, or `None` if `H_s` separates `R` from `A0`.
pub fn transition(
    group: &AffineWeylGroup,
    region: &Region,
    s: usize,
    spec: &ArrangementSpec,
) -> Option<Region> {
    if !same_side_as_a0(group.root_system(), &region.strips, s) {
        return None;
    }
    let witness = group.right_multiply(&region.witness, s);
    Some(Region {
        strips: spec.region_of(&witness),
        witness,
    })
}

/// All regions, as the closure of the region of `A0` under transitions.
///
/// Regions come out in breadth-first order (generators in id order), so
/// every witness is a shortest alcove reachable by the automaton.
pub fn enumerate_regions(group: &AffineWeylGroup, spec: &ArrangementSpec) -> Vec<Region> {
    let start = Region {
        strips: spec.region_of(&group.identity()),
        witness: group.identity(),
    };
    let mut seen: HashMap<Strips, usize> = HashMap::new();
    seen.insert(start.strips.clone(), 0);
    let mut out = vec![start];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in 0..group.num_generators() {
            if let Some(next) = transition(group, &out[i], s, spec) {
                if !seen.contains_key(&next.strips) {
                    seen.insert(next.strips.clone(), out.len());
                    queue.push_back(out.len());
                    out.push(next);
                }
            }
        }
    }
    out
}

/// Two alcoves in one region whose images under `s` land in different regions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarViolation {
    pub region: Strips,
    pub generator: usize,
    pub first_witness: Word,
    pub first_image: Strips,
    pub second_witness: Word,
    pub second_image: Strips,
}

#[derive(Debug, Clone, Serialize)]
pub struct StarReport {
    pub ok: bool,
    pub alcoves_checked: usize,
    pub regions_seen: usize,
    pub violations: Vec<StarViolation>,
}

/// Checks property (*) using every alcove of length at most `max_len` as a witness.
pub fn verify_star(group: &AffineWeylGroup, spec: &ArrangementSpec, max_len: usize) -> StarReport {
    let ball = group.ball(max_len);
    // (region, s) -> (first image, witness index)
    let mut images: BTreeMap<(Strips, usize), (Strips, usize)> = BTreeMap::new();
    let mut regions = std::collections::HashSet::new();
    let mut violations = Vec::new();
    let rs = group.root_system();
    for (i, elem) in ball.elements().iter().enumerate() {
        let strips = spec.region_of(elem);
        regions.insert(strips.clone());
        for s in 0..group.num_generators() {
            if !same_side_as_a0(rs, &strips, s) {
                continue;
            }
            let image = spec.region_of(&group.right_multiply(elem, s));
            match images.get(&(strips.clone(), s)) {
                None => {
                    images.insert((strips.clone(), s), (image, i));
                }
                Some((first, j)) if *first != image => {
                    violations.push(StarViolation {
                        region: strips.clone(),
                        generator: s,
                        first_witness: ball.word(*j).to_vec(),
                        first_image: first.clone(),
                        second_witness: ball.word(i).to_vec(),
                        second_image: image,
                    });
                }
                Some(_) => {}
            }
        }
    }
    StarReport {
        ok: violations.is_empty(),
        alcoves_checked: ball.len(),
        regions_seen: regions.len(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub strips: Strips,
    pub witness_word: Word,
}

/// JSON table of regions: `[{"strips": [...], "witness_word": [...]}, ...]`.
pub fn regions_to_json(group: &AffineWeylGroup, regions: &[Region]) -> Result<String> {
    let records: Vec<RegionRecord> = regions
        .iter()
        .map(|r| RegionRecord {
            strips: r.strips.clone(),
            witness_word: group.word_of(&r.witness),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&records)?)
}
