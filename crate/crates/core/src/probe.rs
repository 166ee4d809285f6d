//! Nonfiberedness detection and explicit periodic representations.
//!
//! Positive entropy of some `Phi_{S_N}` shift certifies that the
//! commutator subgroup is not finitely generated, hence the knot is not
//! fibered; the scan over small symmetric groups looks for such a witness.
//! The converse direction is constructive: from any representation of the
//! whole group whose restriction separates `U` inside `K`, right
//! multiplication on cosets produces a periodic point of a coset shift.

use thiserror::Error;

use crate::dynamics::{entropy, Verdict};
use crate::group::{FiniteGroup, GroupElement, GroupError, Subgroup};
use crate::hnn::HnnSystem;
use crate::shift_graph::{build_graph, prune, GraphError};
use crate::words::{Word, WordError};

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("scan bound {0} outside 2..=6")]
    InvalidScanBound(usize),
    #[error("representation search needs {required} assignments, over the limit {limit}")]
    EnumerationLimit { required: u128, limit: u64 },
    #[error("image of U equals image of K; no coset action to build")]
    NoSeparation,
    #[error("constructed coset path failed verification: {0}")]
    CosetPathBroken(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Entropy measurement of one scanned symmetric group.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub degree: usize,
    pub vertices_live: usize,
    pub edges_live: usize,
    pub entropy: f64,
}

/// A degree whose graph build was refused by the edge cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedScan {
    pub degree: usize,
    pub required_edges: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion {
    CertifiedNonfibered { degree: usize, entropy: f64 },
    NoWitnessFound { max_degree: usize },
}

/// Outcome of a probe scan. `witnesses` lists the positive-entropy
/// measurements (at most one, since the scan stops at the first);
/// `scans` records every completed degree for reporting.
#[derive(Debug, Clone)]
pub struct ProbeVerdict {
    pub knot: String,
    pub scans: Vec<ScanResult>,
    pub skipped: Vec<SkippedScan>,
    pub witnesses: Vec<ScanResult>,
    pub conclusion: Conclusion,
}

/// Scans `S_2..S_n_max` in ascending order, building and pruning each
/// shift graph and measuring entropy. Stops at the first positive entropy:
/// that group certifies nonfiberedness. Degrees refused by the edge cap
/// are recorded and skipped. Finding no witness certifies nothing; a
/// nonfibered knot may need a larger target group.
pub fn probe_knot(
    system: &HnnSystem,
    n_max: usize,
    edge_cap: u64,
    tol: f64,
) -> Result<ProbeVerdict, ProbeError> {
    if !(2..=6).contains(&n_max) {
        return Err(ProbeError::InvalidScanBound(n_max));
    }
    let mut scans = Vec::new();
    let mut skipped = Vec::new();
    let mut witnesses = Vec::new();
    let mut conclusion = Conclusion::NoWitnessFound { max_degree: n_max };
    for degree in 2..=n_max {
        let group = FiniteGroup::symmetric(degree)?;
        let graph = match build_graph(system, &group, edge_cap) {
            Ok(graph) => graph,
            Err(GraphError::EdgeCapExceeded { required, .. }) => {
                skipped.push(SkippedScan {
                    degree,
                    required_edges: required,
                });
                continue;
            }
            Err(other) => return Err(other.into()),
        };
        let live = prune(&graph);
        let h = entropy(&live.multigraph(), tol);
        let result = ScanResult {
            degree,
            vertices_live: live.num_vertices(),
            edges_live: live.num_edges(),
            entropy: h,
        };
        let positive = h > 0.0;
        scans.push(result.clone());
        if positive {
            witnesses.push(result);
            conclusion = Conclusion::CertifiedNonfibered { degree, entropy: h };
            break;
        }
    }
    Ok(ProbeVerdict {
        knot: system.name.clone(),
        scans,
        skipped,
        witnesses,
        conclusion,
    })
}

/// A representation of the whole group into a finite target: an image for
/// the stable letter together with images for the base generators, subject
/// to the base relators and the gluing relation
/// `x_image^-1 * u_i * x_image = v_i`.
#[derive(Debug, Clone)]
pub struct GRep {
    pub x_image: GroupElement,
    pub base_images: Vec<GroupElement>,
    pub image_u: Subgroup,
    pub image_k: Subgroup,
    pub separated: bool,
}

/// All representations of the augmented system into `group`, in
/// lexicographic order of `(x_image, base_images)`. For each, the image of
/// `U` and the image of the commutator subgroup (the closure of all
/// `x`-conjugates of the base images, with exponents up to the order of
/// `x_image`) are computed, and `separated` records whether the former is
/// proper in the latter.
pub fn find_g_reps(
    system: &HnnSystem,
    group: &FiniteGroup,
    limit: u64,
) -> Result<Vec<GRep>, ProbeError> {
    let order = group.order() as u128;
    let required = order
        .checked_pow(system.base_rank as u32 + 1)
        .unwrap_or(u128::MAX);
    if required > limit as u128 {
        return Err(ProbeError::EnumerationLimit { required, limit });
    }

    let elements = group.elements();
    let identity = group.identity();
    let mut reps = Vec::new();
    for x_image in &elements {
        let x_inverse = group.inverse(x_image)?;
        let mut digits = vec![0usize; system.base_rank];
        loop {
            let assignment: Vec<GroupElement> =
                digits.iter().map(|&d| elements[d].clone()).collect();

            let mut valid = true;
            for relator in &system.relators {
                if relator.evaluate(&assignment, group)? != identity {
                    valid = false;
                    break;
                }
            }
            if valid {
                for (u, v) in system.u_words.iter().zip(&system.v_words) {
                    let left = group.compose(
                        &group.compose(&x_inverse, &u.evaluate(&assignment, group)?)?,
                        x_image,
                    )?;
                    if left != v.evaluate(&assignment, group)? {
                        valid = false;
                        break;
                    }
                }
            }
            if valid {
                let image_u = image_of_words(&system.u_words, &assignment, group)?;
                let image_k = conjugate_closure(&assignment, x_image, group)?;
                let separated = image_u.order() < image_k.order();
                reps.push(GRep {
                    x_image: x_image.clone(),
                    base_images: assignment,
                    image_u,
                    image_k,
                    separated,
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
    }
    Ok(reps)
}

fn image_of_words(
    words: &[Word],
    assignment: &[GroupElement],
    group: &FiniteGroup,
) -> Result<Subgroup, ProbeError> {
    let generators = words
        .iter()
        .map(|w| w.evaluate(assignment, group))
        .collect::<Result<Vec<GroupElement>, WordError>>()?;
    Ok(group.subgroup_closure(&generators)?)
}

/// Closure of `x^-j * b * x^j` over all base images `b` and
/// `0 <= j < order(x_image)`; conjugation by the full power is inner
/// trivial on images, so the closure stabilizes there.
fn conjugate_closure(
    assignment: &[GroupElement],
    x_image: &GroupElement,
    group: &FiniteGroup,
) -> Result<Subgroup, ProbeError> {
    let r = group.element_order(x_image)?;
    let mut generators = Vec::with_capacity(assignment.len() * r);
    for j in 0..r {
        let x_j = group.power(x_image, j as i64)?;
        let x_j_inv = group.inverse(&x_j)?;
        for b in assignment {
            generators.push(group.compose(&group.compose(&x_j_inv, b)?, &x_j)?);
        }
    }
    Ok(group.subgroup_closure(&generators)?)
}

/// A period-`period` closed path in the degree-`degree` coset shift: edge
/// `j` carries one permutation per base generator.
#[derive(Debug, Clone)]
pub struct CosetPath {
    pub degree: usize,
    pub period: usize,
    pub labels: Vec<Vec<GroupElement>>,
}

/// Converts a separating representation into an explicit periodic point of
/// the coset shift. The cosets of the `U`-image inside the `K`-image are
/// the symbols (the `U`-image itself is symbol 0); edge `j` sends each
/// base generator to the right-multiplication permutation of its `x^j`
/// conjugate. Verifies that consecutive edges chain, that the path closes
/// after `order(x_image)` steps, and that the `U`-words at the starting
/// edge fix symbol 0.
pub fn coset_rep_construct(
    rep: &GRep,
    system: &HnnSystem,
    group: &FiniteGroup,
) -> Result<CosetPath, ProbeError> {
    if !rep.separated {
        return Err(ProbeError::NoSeparation);
    }
    let coset_reps = group.right_cosets(&rep.image_u, &rep.image_k)?;
    let degree = coset_reps.len();
    debug_assert_eq!(coset_reps[0], group.identity());

    // coset lookup: U * rep -> symbol
    let mut symbol_of = std::collections::HashMap::new();
    for (symbol, coset_rep) in coset_reps.iter().enumerate() {
        for u in rep.image_u.elements() {
            symbol_of.insert(group.compose(u, coset_rep)?, symbol);
        }
    }
    let perm_of = |k: &GroupElement| -> Result<GroupElement, ProbeError> {
        let mut images = Vec::with_capacity(degree);
        for coset_rep in &coset_reps {
            let moved = group.compose(coset_rep, k)?;
            let symbol = symbol_of.get(&moved).ok_or_else(|| {
                ProbeError::CosetPathBroken(format!("coset of {moved} not found in the K-image"))
            })?;
            images.push(*symbol as u8);
        }
        Ok(GroupElement::Perm(images))
    };

    let period = group.element_order(&rep.x_image)?;
    let mut labels = Vec::with_capacity(period);
    for j in 0..period {
        let x_j = group.power(&rep.x_image, j as i64)?;
        let x_j_inv = group.inverse(&x_j)?;
        let mut label = Vec::with_capacity(rep.base_images.len());
        for b in &rep.base_images {
            let conjugate = group.compose(&group.compose(&x_j_inv, b)?, &x_j)?;
            label.push(perm_of(&conjugate)?);
        }
        labels.push(label);
    }

    // the path must chain: v-words at edge j meet u-words at edge j+1,
    // wrapping around at the period. Degrees beyond the symmetric-group
    // limit skip this check; callers verify against a built graph instead.
    if degree <= crate::group::MAX_SYMMETRIC_DEGREE {
        let coset_group = FiniteGroup::symmetric(degree)?;
        let evaluate_tuple = |words: &[Word], label: &[GroupElement]| {
            words
                .iter()
                .map(|w| w.evaluate(label, &coset_group))
                .collect::<Result<Vec<GroupElement>, WordError>>()
        };
        for j in 0..period {
            let target = evaluate_tuple(&system.v_words, &labels[j])?;
            let next_source = evaluate_tuple(&system.u_words, &labels[(j + 1) % period])?;
            if target != next_source {
                return Err(ProbeError::CosetPathBroken(format!(
                    "edge {j} does not chain into edge {}",
                    (j + 1) % period
                )));
            }
        }
        let start_source = evaluate_tuple(&system.u_words, &labels[0])?;
        for image in &start_source {
            match image {
                GroupElement::Perm(p) => {
                    if p[0] != 0 {
                        return Err(ProbeError::CosetPathBroken(
                            "a U-word image moves the base coset".into(),
                        ));
                    }
                }
                GroupElement::Index(_) => unreachable!("coset labels are permutations"),
            }
        }
    }

    Ok(CosetPath {
        degree,
        period,
        labels,
    })
}

/// Convenience view for reporting: did the scan agree with the structural
/// verdict of the witnessing graph?
pub fn verdict_of_entropy(h: f64) -> Verdict {
    if h > 0.0 {
        Verdict::UncountableShift
    } else {
        Verdict::FiniteShift
    }
}
