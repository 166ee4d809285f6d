//! The finite directed multigraph presenting a representation shift.
//!
//! Each assignment of the base generators into the target group that kills
//! the relators contributes one edge, from the tuple of `u`-word images to
//! the tuple of `v`-word images. Parallel edges are distinct. Bi-infinite
//! paths in this graph are exactly the points of the shift, so everything
//! dynamical (entropy, periodic points, countability) reduces to graph
//! structure after pruning away vertices that cannot lie on such a path.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement};
use crate::hnn::HnnSystem;
use crate::words::WordError;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("assignment enumeration needs {required} edges, over the cap {cap}")]
    EdgeCapExceeded { required: u128, cap: u64 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Directed multigraph on vertices `0..n`; parallel edges and self-loops
/// are kept as separate entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// One strongly connected component. `internal_edges` counts edges with
/// both ends inside, parallel copies included. A component is a simple
/// cycle when its internal edges form a single closed loop through every
/// vertex; a singleton with no self-loop has `internal_edges == 0` and is
/// not a simple cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    pub vertices: Vec<usize>,
    pub internal_edges: usize,
    pub is_simple_cycle: bool,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Multigraph {
        for &(s, t) in &edges {
            assert!(
                s < n && t < n,
                "edge ({s}, {t}) out of range for {n} vertices"
            );
        }
        Multigraph { n, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Rows of the adjacency matrix in sparse form: for each source, the
    /// distinct targets with multiplicities.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, u64)>> {
        let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); self.n];
        for &(s, t) in &self.edges {
            *rows[s].entry(t).or_insert(0) += 1;
        }
        rows.into_iter()
            .map(|row| row.into_iter().collect())
            .collect()
    }

    /// Vertices that survive repeatedly deleting anything with in-degree or
    /// out-degree zero, in ascending order. Closed paths are untouched, so
    /// this is exactly the part of the graph carrying bi-infinite paths.
    pub fn live_vertices(&self) -> Vec<usize> {
        let mut alive = vec![true; self.n];
        loop {
            let mut indeg = vec![0usize; self.n];
            let mut outdeg = vec![0usize; self.n];
            for &(s, t) in &self.edges {
                if alive[s] && alive[t] {
                    outdeg[s] += 1;
                    indeg[t] += 1;
                }
            }
            let mut changed = false;
            for v in 0..self.n {
                if alive[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.n).filter(|&v| alive[v]).collect()
    }

    /// Sub-multigraph induced on the given vertices, renumbered to
    /// `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut renumber = HashMap::with_capacity(vertices.len());
        for (new, &old) in vertices.iter().enumerate() {
            renumber.insert(old, new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(s, t)| Some((*renumber.get(&s)?, *renumber.get(&t)?)))
            .collect();
        Multigraph::new(vertices.len(), edges)
    }

    /// Strongly connected components via iterative Tarjan, each with its
    /// internal edge count. Components are sorted by smallest vertex.
    pub fn sccs(&self) -> Vec<Scc> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(s, t) in &self.edges {
            adj[s].push(t);
        }

        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; self.n];
        let mut low = vec![0usize; self.n];
        let mut on_stack = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<usize>> = Vec::new();

        for root in 0..self.n {
            if index[root] != UNSEEN {
                continue;
            }
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            let mut call_stack: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(frame) = call_stack.last_mut() {
                let v = frame.0;
                if frame.1 < adj[v].len() {
                    let w = adj[v][frame.1];
                    frame.1 += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call_stack.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call_stack.pop();
                    if let Some(&(parent, _)) = call_stack.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("Tarjan stack underflow");
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        component.sort_unstable();
                        components.push(component);
                    }
                }
            }
        }
        components.sort_by_key(|c| c[0]);

        let mut comp_of = vec![usize::MAX; self.n];
        for (id, component) in components.iter().enumerate() {
            for &v in component {
                comp_of[v] = id;
            }
        }
        let mut internal = vec![0usize; components.len()];
        let mut internal_out: Vec<BTreeMap<usize, usize>> =
            components.iter().map(|_| BTreeMap::new()).collect();
        for &(s, t) in &self.edges {
            if comp_of[s] == comp_of[t] {
                internal[comp_of[s]] += 1;
                *internal_out[comp_of[s]].entry(s).or_insert(0) += 1;
            }
        }
        components
            .into_iter()
            .enumerate()
            .map(|(id, vertices)| {
                let is_simple_cycle = internal[id] == vertices.len()
                    && vertices
                        .iter()
                        .all(|v| internal_out[id].get(v).copied() == Some(1));
                Scc {
                    vertices,
                    internal_edges: internal[id],
                    is_simple_cycle,
                }
            })
            .collect()
    }
}

/// One edge of the shift graph, remembering the generator assignment that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftEdge {
    pub label: Vec<GroupElement>,
    pub source: usize,
    pub target: usize,
}

/// Shift graph with vertex tuples and labeled edges. Vertices are numbered
/// in order of first appearance; edges follow the lexicographic order of
/// their assignments.
#[derive(Debug, Clone)]
pub struct ShiftGraph {
    pub group: FiniteGroup,
    pub vertices: Vec<Vec<GroupElement>>,
    pub edges: Vec<ShiftEdge>,
}

impl ShiftGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn multigraph(&self) -> Multigraph {
        Multigraph::new(
            self.vertices.len(),
            self.edges.iter().map(|e| (e.source, e.target)).collect(),
        )
    }
}

/// Enumerates all generator assignments into `group` in lexicographic
/// order, keeps those killing every relator, and records one edge per
/// survivor. `edge_cap` bounds the assignment count up front; raise it (or
/// the CLI environment override) for bigger targets.
pub fn build_graph(
    system: &HnnSystem,
    group: &FiniteGroup,
    edge_cap: u64,
) -> Result<ShiftGraph, GraphError> {
    let order = group.order() as u128;
    let rank = system.base_rank as u32;
    let required = order.checked_pow(rank).unwrap_or(u128::MAX);
    if required > edge_cap as u128 {
        return Err(GraphError::EdgeCapExceeded {
            required,
            cap: edge_cap,
        });
    }

    let elements = group.elements();
    let mut vertex_ids: HashMap<Vec<GroupElement>, usize> = HashMap::new();
    let mut vertices: Vec<Vec<GroupElement>> = Vec::new();
    let mut edges: Vec<ShiftEdge> = Vec::new();
    let mut intern = |tuple: Vec<GroupElement>, vertices: &mut Vec<Vec<GroupElement>>| -> usize {
        if let Some(&id) = vertex_ids.get(&tuple) {
            return id;
        }
        let id = vertices.len();
        vertex_ids.insert(tuple.clone(), id);
        vertices.push(tuple);
        id
    };

    // Odometer over `rank` digits; the last digit moves fastest, so
    // assignments come out in lexicographic order.
    let mut digits = vec![0usize; system.base_rank];
    loop {
        let assignment: Vec<GroupElement> = digits.iter().map(|&d| elements[d].clone()).collect();
        let keeps_relators = system
            .relators
            .iter()
            .map(|r| Ok(r.evaluate(&assignment, group)? == group.identity()))
            .collect::<Result<Vec<bool>, WordError>>()?
            .into_iter()
            .all(|ok| ok);
        if keeps_relators {
            let evaluate_tuple = |words: &[crate::words::Word]| {
                words
                    .iter()
                    .map(|w| w.evaluate(&assignment, group))
                    .collect::<Result<Vec<GroupElement>, WordError>>()
            };
            let source_tuple = evaluate_tuple(&system.u_words)?;
            let target_tuple = evaluate_tuple(&system.v_words)?;
            let source = intern(source_tuple, &mut vertices);
            let target = intern(target_tuple, &mut vertices);
            edges.push(ShiftEdge {
                label: assignment,
                source,
                target,
            });
        }

        let mut pos = system.base_rank;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < elements.len() {
                break;
            }
            digits[pos] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }

    Ok(ShiftGraph {
        group: group.clone(),
        vertices,
        edges,
    })
}

/// Restriction of the graph to vertices that lie on some bi-infinite path.
/// Vertex and edge orders are inherited, so pruning is deterministic and
/// idempotent.
pub fn prune(graph: &ShiftGraph) -> ShiftGraph {
    let live = graph.multigraph().live_vertices();
    let mut renumber = HashMap::with_capacity(live.len());
    for (new, &old) in live.iter().enumerate() {
        renumber.insert(old, new);
    }
    let vertices = live.iter().map(|&v| graph.vertices[v].clone()).collect();
    let edges = graph
        .edges
        .iter()
        .filter_map(|e| {
            Some(ShiftEdge {
                label: e.label.clone(),
                source: *renumber.get(&e.source)?,
                target: *renumber.get(&e.target)?,
            })
        })
        .collect();
    ShiftGraph {
        group: graph.group.clone(),
        vertices,
        edges,
    }
}

fn tuple_label(tuple: &[GroupElement]) -> String {
    let parts: Vec<String> = tuple.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// GraphViz rendering with vertex tuples and assignment labels.
pub fn export_dot(graph: &ShiftGraph) -> String {
    let mut out = String::from("digraph shift {\n  rankdir=LR;\n");
    for (id, tuple) in graph.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{id} [label=\"{}\"];", tuple_label(tuple));
    }
    for edge in &graph.edges {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label=\"{}\"];",
            edge.source,
            edge.target,
            tuple_label(&edge.label)
        );
    }
    out.push_str("}\n");
    out
}

/// `source,target,count` rows of the adjacency matrix, sorted.
pub fn export_adjacency_csv(graph: &ShiftGraph) -> String {
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for edge in &graph.edges {
        *counts.entry((edge.source, edge.target)).or_insert(0) += 1;
    }
    let mut out = String::from("source,target,count\n");
    for ((s, t), c) in counts {
        let _ = writeln!(out, "{s},{t},{c}");
    }
    out
}
