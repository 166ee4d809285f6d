//! Shared fixtures and independent oracles for the integration tests.
//!
//! Everything here recomputes its answers from first principles (exact
//! characteristic polynomials, Sturm-chain root isolation, explicit path
//! enumeration, direct iteration of vertex maps) so the library's power
//! iteration, trace, and pruning code is checked against genuinely
//! different arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use repshift::group::{FiniteGroup, GroupElement};
use repshift::hnn::HnnSystem;
use repshift::shift_graph::Multigraph;
use repshift::words::Word;

// ---------------------------------------------------------------------
// Cayley-table group fixtures (orders 8..24, none embeddable in S_4)

/// Multiplication rows of the dihedral group of order 2n: indices 0..n are
/// rotations, n..2n reflections, row g column h giving g*h with g applied
/// first.
pub fn dihedral_rows(n: usize) -> Vec<Vec<usize>> {
    let mut rows = Vec::with_capacity(2 * n);
    for g in 0..2 * n {
        let mut row = Vec::with_capacity(2 * n);
        for h in 0..2 * n {
            let p = match (g < n, h < n) {
                (true, true) => (g + h) % n,
                (true, false) => n + ((h - n) + n - g % n) % n,
                (false, true) => n + ((g - n) + h) % n,
                (false, false) => ((h - n) + n - (g - n) % n) % n,
            };
            row.push(p);
        }
        rows.push(row);
    }
    rows
}

pub fn dihedral(n: usize) -> FiniteGroup {
    FiniteGroup::from_cayley_table(0, dihedral_rows(n)).unwrap()
}

/// Dicyclic group of order 4n: elements a^i b^e with a of order 2n,
/// b^2 = a^n, and b a b^-1 = a^-1. Element index is i + 2n*e.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let two_n = 2 * n;
    let idx = |i: usize, e: usize| (e % 2) * two_n + i % two_n;
    let mut rows = Vec::with_capacity(4 * n);
    for g in 0..4 * n {
        let (i1, e1) = (g % two_n, g / two_n);
        let mut row = Vec::with_capacity(4 * n);
        for h in 0..4 * n {
            let (i2, e2) = (h % two_n, h / two_n);
            let (i, e) = if e1 == 0 {
                (i1 + i2, e2)
            } else if e2 == 0 {
                (i1 + two_n - i2 % two_n, 1)
            } else {
                (i1 + two_n - i2 % two_n + n, 0)
            };
            row.push(idx(i, e));
        }
        rows.push(row);
    }
    FiniteGroup::from_cayley_table(0, rows).unwrap()
}

/// The Frobenius group of order 21: Z/7 extended by the order-3
/// automorphism a -> a^2. Element index is i + 7*j for a^i t^j.
pub fn frobenius21() -> FiniteGroup {
    let idx = |i: usize, j: usize| 7 * (j % 3) + i % 7;
    let pow2 = [1usize, 2, 4];
    let mut rows = Vec::with_capacity(21);
    for g in 0..21 {
        let (i1, j1) = (g % 7, g / 7);
        let mut row = Vec::with_capacity(21);
        for h in 0..21 {
            let (i2, j2) = (h % 7, h / 7);
            row.push(idx(i1 + i2 * pow2[j1], j1 + j2));
        }
        rows.push(row);
    }
    FiniteGroup::from_cayley_table(0, rows).unwrap()
}

/// SL(2, 3), order 24: 2x2 matrices over F_3 with determinant 1.
pub fn sl23() -> FiniteGroup {
    let mut mats = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                for d in 0..3u32 {
                    if (a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(3) == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    assert_eq!(mats.len(), 24);
    let index_of = |m: &[u32; 4]| mats.iter().position(|x| x == m).unwrap();
    let mul = |x: &[u32; 4], y: &[u32; 4]| -> [u32; 4] {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let identity = index_of(&[1, 0, 0, 1]);
    let rows: Vec<Vec<usize>> = mats
        .iter()
        .map(|x| mats.iter().map(|y| index_of(&mul(x, y))).collect())
        .collect();
    FiniteGroup::from_cayley_table(identity, rows).unwrap()
}

/// Serializes multiplication rows in the table file format the CLI loads.
pub fn cayley_file_text(identity: usize, rows: &[Vec<usize>]) -> String {
    let mut text = format!("order {}\nidentity {}\n", rows.len(), identity);
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    text
}

// ---------------------------------------------------------------------
// Exact spectral oracle. The spectral radius of a nonnegative integer
// matrix is its largest real eigenvalue, so: characteristic polynomial
// over arbitrary-precision integers, square-free reduction, then a Sturm
// chain isolates the largest real root with exact dyadic arithmetic.

type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_trim(out)
}

fn poly_scale(a: &Poly, k: &BigInt) -> Poly {
    poly_trim(a.iter().map(|c| c * k).collect())
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn poly_is_zero(a: &Poly) -> bool {
    a.iter().all(Zero::is_zero)
}

fn degree(a: &Poly) -> usize {
    a.len() - 1
}

fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Divides out the (positive) content, keeping the sign of the polynomial.
fn content_strip(a: &Poly) -> Poly {
    let mut content = BigInt::zero();
    for c in a {
        content = int_gcd(&content, c);
    }
    if content.is_zero() {
        return vec![BigInt::zero()];
    }
    a.iter().map(|c| c / &content).collect()
}

/// Content-free with positive leading coefficient (for gcd results, where
/// the sign is a unit).
fn primitive(a: &Poly) -> Poly {
    let mut out = content_strip(a);
    if out.last().unwrap().is_negative() {
        out = poly_neg(&out);
    }
    out
}

/// Pseudo-remainder scaled by an even power of b's leading coefficient, so
/// the result has the sign of (a mod b) up to a positive factor.
fn prem_positive(a: &Poly, b: &Poly) -> Poly {
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut scalings = 0usize;
    while !poly_is_zero(&r) && degree(&r) >= degree(b) {
        let shift = degree(&r) - degree(b);
        let lead = r.last().unwrap().clone();
        let mut shifted = vec![BigInt::zero(); shift];
        shifted.extend(b.iter().cloned());
        r = poly_sub(&poly_scale(&r, &lb), &poly_scale(&shifted, &lead));
        scalings += 1;
    }
    if lb.is_negative() && scalings % 2 == 1 {
        r = poly_scale(&r, &lb);
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if poly_is_zero(&a) {
        return b;
    }
    while !poly_is_zero(&b) {
        let r = primitive(&prem_positive(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient, panicking if the division leaves a remainder.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(b.len()) + 1];
    while !poly_is_zero(&r) && degree(&r) >= degree(b) {
        let shift = degree(&r) - degree(b);
        let lead = r.last().unwrap().clone();
        assert!(
            (&lead % &lb).is_zero(),
            "expected exact polynomial division"
        );
        let coeff = &lead / &lb;
        q[shift] = coeff.clone();
        let mut shifted = vec![BigInt::zero(); shift];
        shifted.extend(b.iter().cloned());
        r = poly_sub(&r, &poly_scale(&shifted, &coeff));
    }
    assert!(poly_is_zero(&r), "expected exact polynomial division");
    poly_trim(q)
}

fn poly_derivative(a: &Poly) -> Poly {
    if a.len() == 1 {
        return vec![BigInt::zero()];
    }
    poly_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// det(xI - A) by Laplace expansion along the first column, over integer
/// polynomials. Fine for the handful-of-vertices graphs the oracle serves.
fn char_poly(adj: &[Vec<u64>]) -> Poly {
    let n = adj.len();
    let mut entries: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for (i, row) in adj.iter().enumerate() {
        let mut out_row = Vec::with_capacity(n);
        for (j, &a) in row.iter().enumerate() {
            let constant = BigInt::from(-(a as i64));
            if i == j {
                out_row.push(poly_trim(vec![constant, BigInt::one()]));
            } else {
                out_row.push(poly_trim(vec![constant]));
            }
        }
        entries.push(out_row);
    }
    poly_matrix_det(&entries)
}

fn poly_matrix_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = vec![BigInt::zero()];
    for i in 0..n {
        if poly_is_zero(&m[i][0]) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = poly_mul(&m[i][0], &poly_matrix_det(&minor));
        det = if i % 2 == 0 {
            poly_add(&det, &term)
        } else {
            poly_sub(&det, &term)
        };
    }
    det
}

/// Sturm chain of a square-free polynomial: p, p', then negated
/// pseudo-remainders, each stripped by a positive constant only.
fn sturm_chain(q: &Poly) -> Vec<Poly> {
    let mut chain = vec![q.clone(), poly_derivative(q)];
    loop {
        let k = chain.len();
        if poly_is_zero(&chain[k - 1]) {
            chain.pop();
            break;
        }
        if degree(&chain[k - 1]) == 0 {
            break;
        }
        let r = prem_positive(&chain[k - 2], &chain[k - 1]);
        if poly_is_zero(&r) {
            break;
        }
        chain.push(content_strip(&poly_neg(&r)));
    }
    chain
}

fn sign_of(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign of p(num / 2^k), evaluated exactly by clearing denominators.
fn sign_at_dyadic(p: &Poly, num: &BigInt, k: u32) -> i8 {
    let d = degree(p);
    let two_k = BigInt::one() << k;
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::one();
    let mut scale_pow = two_k.pow(d as u32);
    for c in p.iter() {
        acc += c * &num_pow * &scale_pow;
        num_pow *= num;
        if !scale_pow.is_one() {
            scale_pow /= &two_k;
        }
    }
    sign_of(&acc)
}

fn variations_at_dyadic(chain: &[Poly], num: &BigInt, k: u32) -> usize {
    variations(chain.iter().map(|p| sign_at_dyadic(p, num, k)))
}

fn variations_at_infinity(chain: &[Poly]) -> usize {
    variations(chain.iter().map(|p| sign_of(p.last().unwrap())))
}

/// Entropy from the exact largest real root of det(xI - A). The input is
/// the adjacency matrix of a live graph (every vertex on a cycle), whose
/// spectral radius is that root; radius 1 or below reports entropy 0.
pub fn exact_perron_entropy(adj: &[Vec<u64>]) -> f64 {
    assert!(!adj.is_empty(), "oracle needs at least one vertex");
    let p = char_poly(adj);
    let g = poly_gcd(&p, &poly_derivative(&p));
    let q = if degree(&g) == 0 {
        primitive(&p)
    } else {
        poly_div_exact(&primitive(&p), &g)
    };
    let chain = sturm_chain(&q);
    let v_inf = variations_at_infinity(&chain);
    let roots_above = |num: &BigInt, k: u32| variations_at_dyadic(&chain, num, k) - v_inf;

    let max_row_sum: u64 = adj.iter().map(|row| row.iter().sum::<u64>()).max().unwrap();
    let mut hi = BigInt::from(max_row_sum + 1);
    assert_eq!(
        roots_above(&hi, 0),
        0,
        "row-sum bound must clear every real root"
    );
    if roots_above(&BigInt::zero(), 0) == 0 {
        // no real root above 0: live graphs never reach here, but a zero
        // matrix has radius 0
        return 0.0;
    }

    // integer bisection down to a unit interval, then dyadic refinement;
    // invariant: at least one root above lo, none above hi
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid = (&hi + &lo) / 2;
        if roots_above(&mid, 0) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut k = 0u32;
    for _ in 0..80 {
        let mid = (&lo << 1) + 1;
        k += 1;
        if roots_above(&mid, k) >= 1 {
            lo = mid;
        } else {
            lo <<= 1;
        }
    }
    let root = (lo.to_f64().unwrap() + 1.0) / 2f64.powi(k as i32);
    if root > 1.0 + 1e-12 {
        root.ln()
    } else {
        0.0
    }
}

/// Dense adjacency matrix of a multigraph.
pub fn adjacency_matrix(mg: &Multigraph) -> Vec<Vec<u64>> {
    let n = mg.num_vertices();
    let mut adj = vec![vec![0u64; n]; n];
    for &(s, t) in mg.edges() {
        adj[s][t] += 1;
    }
    adj
}

// ---------------------------------------------------------------------
// Path-counting oracle: explicit depth-first enumeration of closed edge
// paths, treating parallel edges as distinct. Independent of the
// matrix-power trace computation.

pub fn brute_closed_paths(mg: &Multigraph, r: usize) -> u64 {
    assert!(r >= 1);
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); mg.num_vertices()];
    for (index, &(s, _)) in mg.edges().iter().enumerate() {
        by_source[s].push(index);
    }
    fn walk(
        mg: &Multigraph,
        by_source: &[Vec<usize>],
        start: usize,
        at: usize,
        left: usize,
    ) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        by_source[at]
            .iter()
            .map(|&e| walk(mg, by_source, start, mg.edges()[e].1, left - 1))
            .sum()
    }
    (0..mg.num_vertices())
        .map(|v| walk(mg, &by_source, v, v, r))
        .sum()
}

// ---------------------------------------------------------------------
// Monodromy oracle for systems whose u-words are exactly the base
// generators: the shift is then the full assignment space and one step of
// the dynamics is the vertex map t -> (v_1(t), ..., v_k(t)). Fixed points
// of the r-th iterate are counted by direct iteration.

pub fn monodromy_fix_count(system: &HnnSystem, group: &FiniteGroup, r: usize) -> u64 {
    for (i, u) in system.u_words.iter().enumerate() {
        let name = (b'a' + i as u8) as char;
        assert_eq!(
            *u,
            Word::parse(&name.to_string(), system.base_rank).unwrap(),
            "oracle needs u-words that are exactly the base generators"
        );
    }
    assert_eq!(system.u_words.len(), system.base_rank);

    let elements = group.elements();
    let mut tuples: Vec<Vec<GroupElement>> = vec![Vec::new()];
    for _ in 0..system.base_rank {
        let mut next = Vec::with_capacity(tuples.len() * elements.len());
        for tuple in &tuples {
            for e in &elements {
                let mut extended = tuple.clone();
                extended.push(e.clone());
                next.push(extended);
            }
        }
        tuples = next;
    }

    let step = |tuple: &[GroupElement]| -> Vec<GroupElement> {
        system
            .v_words
            .iter()
            .map(|w| w.evaluate(tuple, group).unwrap())
            .collect()
    };

    let mut fixed = 0;
    for tuple in &tuples {
        let mut current = tuple.clone();
        for _ in 0..r {
            current = step(&current);
        }
        if current == *tuple {
            fixed += 1;
        }
    }
    fixed
}

// ---------------------------------------------------------------------
// Seeded random multigraphs for property tests.

pub fn random_multigraph(rng: &mut StdRng) -> Multigraph {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(0..=12);
    let edges = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Multigraph::new(n, edges)
}
