//! Exact membership and extreme-ray tests for finitely generated cones.
//!
//! By Carathéodory, `t` lies in `cone(V)` iff it is a nonnegative combination
//! of some linearly independent subset of `V`. Subsets are tried by size and
//! each one is solved by exact elimination, so the test works in any rank.

use crate::coxeter::field::Q5;

/// Solves `sum x_k cols[k] = target`; `None` if the columns are dependent or
/// the system is inconsistent.
fn solve_independent(cols: &[&[Q5]], target: &[Q5]) -> Option<Vec<Q5>> {
    let rows = target.len();
    let k = cols.len();
    let mut a: Vec<Vec<Q5>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q5> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    for (pivot_row, col) in (0..k).enumerate() {
        let p = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip().expect("nonzero pivot");
        for x in a[pivot_row].iter_mut() {
            *x = *x * inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot = a[pivot_row].clone();
                for (x, v) in a[r].iter_mut().zip(pivot) {
                    *x = *x - f * v;
                }
            }
        }
    }
    if a[k..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|r| a[r][k]).collect())
}

fn dedup(vectors: &[Vec<Q5>]) -> Vec<&[Q5]> {
    let mut out: Vec<&[Q5]> = Vec::new();
    for v in vectors {
        if !out.contains(&v.as_slice()) && v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// Whether `target` is a nonnegative combination of `vectors`.
pub fn cone_membership(vectors: &[Vec<Q5>], target: &[Q5]) -> bool {
    if target.iter().all(Q5::is_zero) {
        return true;
    }
    let gens = dedup(vectors);
    let max = gens.len().min(target.len());
    let mut chosen = Vec::with_capacity(max);
    (1..=max).any(|size| subsets(&gens, size, 0, &mut chosen, target))
}

fn subsets<'a>(gens: &[&'a [Q5]], size: usize, start: usize, chosen: &mut Vec<&'a [Q5]>, target: &[Q5]) -> bool {
    if chosen.len() == size {
        return solve_independent(chosen, target).is_some_and(|x| x.iter().all(|c| !c.is_negative()));
    }
    for i in start..gens.len() {
        if gens.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(gens[i]);
        let hit = subsets(gens, size, i + 1, chosen, target);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// The cone contains no line: no generator has its negative in the cone.
pub fn is_pointed(vectors: &[Vec<Q5>]) -> bool {
    vectors.iter().all(|v| {
        let neg: Vec<Q5> = v.iter().map(|&x| -x).collect();
        !cone_membership(vectors, &neg)
    })
}

/// `beta` spans an extreme ray of `cone(vectors)`: it is among the generators
/// up to positive scaling and is not a nonnegative combination of the
/// generators that are not positively parallel to it.
pub fn is_extreme_ray(vectors: &[Vec<Q5>], beta: &[Q5]) -> bool {
    let parallel = |v: &[Q5]| -> bool {
        let Some(p) = beta.iter().position(|x| !x.is_zero()) else { return false };
        if v[p].is_zero() {
            return false;
        }
        let ratio = v[p] / beta[p];
        ratio.is_positive() && v.iter().zip(beta).all(|(&a, &b)| a == ratio * b)
    };
    if !vectors.iter().any(|v| parallel(v)) {
        return false;
    }
    let rest: Vec<Vec<Q5>> = vectors.iter().filter(|v| !parallel(v)).cloned().collect();
    !cone_membership(&rest, beta)
}
