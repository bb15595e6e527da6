//! Cell fragments as unions of arrangement regions, and their automata.
//!
//! Exactness is checked on the interior of a ball (lengths up to `L - 2`):
//! a cell is exact for an arrangement when no interior alcove outside the
//! cell lies in one of the cell's regions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alcove::{AffineWeylGroup, Ball, Word};
use crate::arrangement::{verify_star, ArrangementSpec, StarReport, Strips};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::kl::{cells_stabilized, CellFragment, KlTable, Side, StabilizedCells};

/// Default cap for [`minimal_uniform_n`].
pub const DEFAULT_N_MAX: u32 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct CellRegionReport {
    pub label: usize,
    pub name: Word,
    pub spec: ArrangementSpec,
    /// Sorted strip vectors of the cell's members.
    pub regions: Vec<Strips>,
    pub exact_on_ball: bool,
    /// Interior alcoves outside the cell that share one of its regions.
    pub conflicts: usize,
    pub ball_radius: usize,
    pub size_in_ball: usize,
    pub stable: bool,
}

impl CellRegionReport {
    pub fn contains_region(&self, strips: &[i32]) -> bool {
        self.regions
            .binary_search_by(|r| r.as_slice().cmp(strips))
            .is_ok()
    }
}

/// Region set of a fragment and whether it cuts out exactly the fragment
/// among the interior alcoves of the ball.
pub fn cell_regions(
    fragment: &CellFragment,
    spec: &ArrangementSpec,
    ball: &Ball,
    interior_len: usize,
) -> CellRegionReport {
    let region = |x: usize| spec.region_of(ball.element(x));
    let regions: BTreeSet<Strips> = fragment.members.iter().map(|&x| region(x)).collect();
    let conflicts = (0..ball.count_upto(interior_len))
        .filter(|x| fragment.members.binary_search(x).is_err())
        .filter(|&x| regions.contains(&region(x)))
        .count();
    CellRegionReport {
        label: fragment.label,
        name: fragment.name.clone(),
        spec: spec.clone(),
        regions: regions.into_iter().collect(),
        exact_on_ball: conflicts == 0,
        conflicts,
        ball_radius: ball.radius(),
        size_in_ball: fragment.members.len(),
        stable: fragment.stable,
    }
}

/// Region reports for every fragment of a stabilized decomposition.
pub fn all_cell_regions(
    cells: &StabilizedCells,
    spec: &ArrangementSpec,
    ball: &Ball,
) -> Vec<CellRegionReport> {
    cells
        .fragments
        .iter()
        .map(|f| cell_regions(f, spec, ball, cells.interior_len))
        .collect()
}

/// Least uniform `N <= n_max` for which every stable fragment is exact.
pub fn minimal_uniform_n(cells: &StabilizedCells, ball: &Ball, n_max: u32) -> Option<u32> {
    let rs = ball.group().root_system();
    (0..=n_max).find(|&n| {
        let spec = ArrangementSpec::uniform(rs, n);
        cells
            .stable_fragments()
            .all(|f| cell_regions(f, &spec, ball, cells.interior_len).exact_on_ball)
    })
}

/// The arrangement automaton with accepting states cut down to the cell's
/// regions. Refuses a report that is not exact.
pub fn build_cell_automaton(
    group: &AffineWeylGroup,
    report: &CellRegionReport,
) -> Result<Automaton> {
    let full = Automaton::from_arrangement(group, &report.spec);
    cell_automaton_from(&full, report)
}

/// Same as [`build_cell_automaton`], reusing an already built arrangement
/// automaton for `report.spec`.
pub fn cell_automaton_from(full: &Automaton, report: &CellRegionReport) -> Result<Automaton> {
    if !report.exact_on_ball {
        return Err(Error::NotExact {
            label: report.label,
            conflicts: report.conflicts,
        });
    }
    let keep: Vec<usize> = report
        .regions
        .iter()
        .map(|r| {
            let label: Vec<i64> = r.iter().map(|&v| i64::from(v)).collect();
            full.state_with_label(&label)
                .expect("every alcove region is a state of the arrangement automaton")
        })
        .collect();
    Ok(full.restrict_accepting(&keep))
}

/// Reduced words of the inverse cell: the reversed language.
pub fn right_cell_automaton(left: &Automaton) -> Automaton {
    left.reverse()
}

/// Union of the left-cell automata making up one two-sided class.
pub fn two_sided_automaton(left_cells: &[Automaton]) -> Result<Automaton> {
    Automaton::union(left_cells)
}

/// Outcome of checking that stable left cells are unions of regions for
/// the arrangement with bound 0 on short roots and 1 on long roots.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub root_system: String,
    pub spec: ArrangementSpec,
    pub star: StarReport,
    pub cells: Vec<CellRegionReport>,
    pub all_stable_exact: bool,
}

pub fn check_conjecture_nu(table: &KlTable, radius: usize) -> Result<ConjectureReport> {
    let ball = table.ball();
    let group = ball.group();
    let rs = group.root_system();
    let spec = ArrangementSpec::short0_long1(rs);
    let star = verify_star(group, &spec, table.radius());
    let stabilized = cells_stabilized(table, radius, Side::Left)?;
    let cells = all_cell_regions(&stabilized, &spec, ball);
    let all_stable_exact = cells.iter().filter(|c| c.stable).all(|c| c.exact_on_ball);
    Ok(ConjectureReport {
        root_system: rs.name(),
        spec,
        star,
        cells,
        all_stable_exact,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CellsReportEntry {
    pub label: usize,
    pub name: Word,
    pub size_in_ball: usize,
    pub regions: Vec<Strips>,
    pub exact: bool,
    pub stable: bool,
}

/// Serializable summary of a cells run.
#[derive(Debug, Clone, Serialize)]
pub struct CellsReport {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    #[serde(rename = "N_or_nu")]
    pub n_or_nu: String,
    pub ball_radius: usize,
    pub stability_radius: usize,
    pub cells: Vec<CellsReportEntry>,
}

impl CellsReport {
    pub fn new(cells: &StabilizedCells, reports: &[CellRegionReport], ball: &Ball) -> Self {
        let rs = ball.group().root_system();
        let spec_name = reports
            .first()
            .map(|r| r.spec.to_string())
            .unwrap_or_default();
        CellsReport {
            family: rs.family().to_string(),
            rank: rs.rank(),
            n_or_nu: spec_name,
            ball_radius: cells.radius,
            stability_radius: cells.stability_radius,
            cells: reports
                .iter()
                .map(|r| CellsReportEntry {
                    label: r.label,
                    name: r.name.clone(),
                    size_in_ball: r.size_in_ball,
                    regions: r.regions.clone(),
                    exact: r.exact_on_ball,
                    stable: r.stable,
                })
                .collect(),
        }
    }

    pub fn all_stable_exact(&self) -> bool {
        self.cells.iter().filter(|c| c.stable).all(|c| c.exact)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
