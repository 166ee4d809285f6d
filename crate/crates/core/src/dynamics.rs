//! Dynamics of the shift presented by a pruned graph: entropy, exact
//! periodic-point counts, the finite/uncountable dichotomy, and statistics
//! of transitive periodic representations.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement};
use crate::shift_graph::{Multigraph, ShiftGraph};

/// Closed-path enumeration refuses to walk more paths than this.
pub const PATH_BUDGET: u64 = 1_000_000;

const MAX_POWER_ITERATIONS: usize = 100_000;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("transitivity statistics need a symmetric group target")]
    NotSymmetric,
    #[error("{required} closed paths exceed the enumeration budget {budget}")]
    PathBudgetExceeded { required: BigUint, budget: u64 },
}

/// Countability of the shift. The graph has uncountably many bi-infinite
/// paths exactly when two cycles share a vertex, i.e. when some strongly
/// connected component carries more than one cycle; otherwise the closed
/// orbits form a finite set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FiniteShift,
    UncountableShift,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::FiniteShift => write!(f, "FiniteShift"),
            Verdict::UncountableShift => write!(f, "UncountableShift"),
        }
    }
}

/// Per-component summary: vertex count, internal edge count, shape, and
/// Perron root of the component submatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SccReport {
    pub vertices: usize,
    pub internal_edges: usize,
    pub is_simple_cycle: bool,
    pub spectral_radius: f64,
}

impl SccReport {
    /// A component carrying at least two distinct cycles; exactly these
    /// have spectral radius above 1.
    pub fn is_expanding(&self) -> bool {
        self.internal_edges >= 1 && !self.is_simple_cycle
    }
}

/// Everything the analyze pipeline reports about one shift.
#[derive(Debug, Clone)]
pub struct DynamicsReport {
    pub vertices_built: usize,
    pub edges_built: usize,
    pub vertices_live: usize,
    pub edges_live: usize,
    pub empty_shift: bool,
    pub sccs: Vec<SccReport>,
    pub entropy: f64,
    pub verdict: Verdict,
    pub fix_counts: Vec<BigUint>,
    pub growth_rate_estimate: f64,
}

/// Perron root of one strongly connected component, by power iteration on
/// the component matrix plus the identity. The shift makes the iteration
/// matrix primitive, so the iterate stays entrywise positive and the
/// Collatz-Wielandt quotients min_i (Mv)_i / v_i and max_i (Mv)_i / v_i
/// enclose the root; the loop stops once that guaranteed enclosure is
/// narrower than the tolerance.
fn expanding_radius(sub: &Multigraph, tol: f64) -> f64 {
    let k = sub.num_vertices();
    let rows = sub.sparse_rows();
    let tol = tol.max(4.0 * f64::EPSILON);
    let mut v = vec![1.0 / (k as f64).sqrt(); k];
    let mut enclosure: (f64, f64) = (1.0, f64::INFINITY);
    for _ in 0..MAX_POWER_ITERATIONS {
        let mut w = v.clone();
        for (s, row) in rows.iter().enumerate() {
            for &(t, c) in row {
                w[t] += v[s] * c as f64;
            }
        }
        let mut lower = f64::INFINITY;
        let mut upper = 0.0f64;
        for (a, b) in v.iter().zip(&w) {
            let quotient = b / a;
            lower = lower.min(quotient);
            upper = upper.max(quotient);
        }
        // enclosures from different iterates all contain the root, so they
        // may be intersected
        enclosure = (enclosure.0.max(lower), enclosure.1.min(upper));
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= norm;
        }
        v = w;
        if enclosure.1 - enclosure.0 <= tol * enclosure.1.max(1.0) {
            break;
        }
    }
    0.5 * (enclosure.0 + enclosure.1) - 1.0
}

/// Component summaries with spectral radii. Trivial components have radius
/// 0 and simple cycles exactly 1; only components with more than one cycle
/// go through the numerical iteration.
pub fn scc_reports(mg: &Multigraph, tol: f64) -> Vec<SccReport> {
    mg.sccs()
        .into_iter()
        .map(|scc| {
            let spectral_radius = if scc.internal_edges == 0 {
                0.0
            } else if scc.is_simple_cycle {
                1.0
            } else {
                expanding_radius(&mg.induced(&scc.vertices), tol)
            };
            SccReport {
                vertices: scc.vertices.len(),
                internal_edges: scc.internal_edges,
                is_simple_cycle: scc.is_simple_cycle,
                spectral_radius,
            }
        })
        .collect()
}

pub fn entropy_from_sccs(reports: &[SccReport]) -> f64 {
    let max_radius = reports
        .iter()
        .map(|r| r.spectral_radius)
        .fold(0.0f64, f64::max);
    if max_radius > 1.0 {
        max_radius.ln()
    } else {
        0.0
    }
}

/// Natural-log entropy of the shift: log of the Perron root of the
/// adjacency matrix, taken as the max over strongly connected components.
/// Exactly 0 when no component expands; 0 on the empty graph by convention.
pub fn entropy(mg: &Multigraph, tol: f64) -> f64 {
    entropy_from_sccs(&scc_reports(mg, tol))
}

/// Finite/uncountable dichotomy from component structure alone: the shift
/// is uncountable exactly when some component carries two cycles through a
/// common vertex. Structural, no numerics.
pub fn countability_verdict(mg: &Multigraph) -> Verdict {
    let expanding = mg
        .sccs()
        .iter()
        .any(|scc| scc.internal_edges >= 1 && !scc.is_simple_cycle);
    if expanding {
        Verdict::UncountableShift
    } else {
        Verdict::FiniteShift
    }
}

/// `trace(A^r)` for `r = 1..=max_r` in exact arithmetic: the number of
/// closed edge-paths of each length, which counts the period-r points of
/// the shift. Closed paths never leave their component, so cycles are
/// handled combinatorially and only expanding components pay for
/// arbitrary-precision matrix-vector products.
pub fn fix_counts(mg: &Multigraph, max_r: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); max_r];
    for scc in mg.sccs() {
        if scc.internal_edges == 0 {
            continue;
        }
        if scc.is_simple_cycle {
            let len = scc.vertices.len();
            let mut r = len;
            while r <= max_r {
                counts[r - 1] += BigUint::from(len);
                r += len;
            }
            continue;
        }
        let sub = mg.induced(&scc.vertices);
        let rows = sub.sparse_rows();
        let k = sub.num_vertices();
        for start in 0..k {
            let mut current = vec![BigUint::zero(); k];
            current[start] = BigUint::from(1u32);
            for r in 1..=max_r {
                let mut next = vec![BigUint::zero(); k];
                for (s, row) in rows.iter().enumerate() {
                    if current[s].is_zero() {
                        continue;
                    }
                    for &(t, c) in row {
                        next[t] += &current[s] * c;
                    }
                }
                current = next;
                counts[r - 1] += &current[start];
            }
        }
    }
    counts
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small BigUint fits f64").ln();
    }
    let shift = bits - 53;
    let top: BigUint = x >> shift;
    top.to_f64().expect("53-bit BigUint fits f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(1/R) log fix_counts[R]` from the last entry; 0 when the count is 0
/// or 1. Converges to the entropy as R grows when the expanding part is
/// mixing. For purely periodic graphs it oscillates and is reported
/// alongside the entropy without smoothing.
pub fn growth_rate_estimate(counts: &[BigUint]) -> f64 {
    let last = match counts.last() {
        Some(last) if !last.is_zero() => last,
        _ => return 0.0,
    };
    ln_biguint(last) / counts.len() as f64
}

/// Closed-path statistics for a symmetric-group target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitiveStats {
    pub total: u64,
    pub transitive: u64,
    pub subgroup_count: u64,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Walks every closed path of length `r`, checks whether the subgroup
/// generated by all edge-label entries along the path acts transitively on
/// the symbols, and converts the transitive count into a subgroup count:
/// relabeling the symbols other than the basepoint permutes transitive
/// paths freely, so each index-N subgroup accounts for exactly (N-1)! of
/// them.
pub fn transitive_stats(graph: &ShiftGraph, r: usize) -> Result<TransitiveStats, DynamicsError> {
    let degree = match &graph.group {
        FiniteGroup::Symmetric { degree } => *degree,
        _ => return Err(DynamicsError::NotSymmetric),
    };
    assert!(r >= 1, "path length must be positive");
    let mg = graph.multigraph();
    let required = fix_counts(&mg, r).pop().unwrap_or_default();
    if required > BigUint::from(PATH_BUDGET) {
        return Err(DynamicsError::PathBudgetExceeded {
            required,
            budget: PATH_BUDGET,
        });
    }

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); graph.num_vertices()];
    for (idx, edge) in graph.edges.iter().enumerate() {
        adjacency[edge.source].push(idx);
    }

    fn orbit_is_transitive(graph: &ShiftGraph, path: &[usize], degree: usize) -> bool {
        let mut seen = vec![false; degree];
        seen[0] = true;
        let mut frontier = vec![0usize];
        let mut reached = 1usize;
        while let Some(s) = frontier.pop() {
            for &edge_idx in path {
                for element in &graph.edges[edge_idx].label {
                    let image = match element {
                        GroupElement::Perm(p) => p[s] as usize,
                        GroupElement::Index(_) => unreachable!("symmetric labels"),
                    };
                    if !seen[image] {
                        seen[image] = true;
                        reached += 1;
                        frontier.push(image);
                    }
                }
            }
        }
        reached == degree
    }

    struct Walker<'a> {
        graph: &'a ShiftGraph,
        adjacency: &'a [Vec<usize>],
        degree: usize,
        path: Vec<usize>,
        total: u64,
        transitive: u64,
    }

    impl Walker<'_> {
        fn walk(&mut self, start: usize, current: usize, remaining: usize) {
            if remaining == 0 {
                if current == start {
                    self.total += 1;
                    if orbit_is_transitive(self.graph, &self.path, self.degree) {
                        self.transitive += 1;
                    }
                }
                return;
            }
            for i in 0..self.adjacency[current].len() {
                let edge_idx = self.adjacency[current][i];
                self.path.push(edge_idx);
                self.walk(start, self.graph.edges[edge_idx].target, remaining - 1);
                self.path.pop();
            }
        }
    }

    let mut walker = Walker {
        graph,
        adjacency: &adjacency,
        degree,
        path: Vec::with_capacity(r),
        total: 0,
        transitive: 0,
    };
    for start in 0..graph.num_vertices() {
        walker.walk(start, start, r);
    }
    let (total, transitive) = (walker.total, walker.transitive);
    let stabilizer_orbit = factorial(degree - 1);
    assert_eq!(
        transitive % stabilizer_orbit,
        0,
        "transitive path count must split into symbol-relabeling orbits of size (N-1)!"
    );
    Ok(TransitiveStats {
        total,
        transitive,
        subgroup_count: transitive / stabilizer_orbit,
    })
}

/// Full pipeline on a freshly built graph: prune, summarize components,
/// take entropy and verdict, and count periodic points up to `max_r`.
pub fn analyze(graph: &ShiftGraph, max_r: usize, tol: f64) -> DynamicsReport {
    let mg = graph.multigraph();
    let live = mg.live_vertices();
    let live_mg = mg.induced(&live);
    let sccs = scc_reports(&live_mg, tol);
    let entropy = entropy_from_sccs(&sccs);
    let verdict = countability_verdict(&live_mg);
    let fix_counts = fix_counts(&live_mg, max_r);
    let growth = growth_rate_estimate(&fix_counts);
    DynamicsReport {
        vertices_built: mg.num_vertices(),
        edges_built: mg.num_edges(),
        vertices_live: live_mg.num_vertices(),
        edges_live: live_mg.num_edges(),
        empty_shift: live_mg.num_vertices() == 0,
        sccs,
        entropy,
        verdict,
        fix_counts,
        growth_rate_estimate: growth,
    }
}
