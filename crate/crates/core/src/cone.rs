//! Rational polyhedral cones and the double description method.
//!
//! The double description engine below is the workhorse for everything
//! convex in this crate: cone duality and membership, polytope vertex and
//! facet enumeration, and normal fans. It maintains a minimal description
//! (lineality basis plus extreme rays) while halfspaces are added one at a
//! time, using the combinatorial adjacency test. Dimensions here are small,
//! so clarity wins over asymptotics.

use crate::arith::{dot_int, int_vec, primitive, primitive_direction, Int, Rat};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Upper bound on halfspaces per double description run; zero sets are
/// stored in a u128 bitmask.
const MAX_HALFSPACES: usize = 128;

#[derive(Debug, Clone)]
pub struct DdRay {
    pub vector: Vec<Int>,
    /// Bit j set iff halfspace j evaluates to zero on this ray.
    pub zero_set: u128,
}

#[derive(Debug, Clone)]
pub struct DdCone {
    pub dim: usize,
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<DdRay>,
}

impl DdCone {
    /// All generators: extreme rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        let mut out: Vec<Vec<Int>> = self.rays.iter().map(|r| r.vector.clone()).collect();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x.clone()).collect());
        }
        out
    }
}

fn sign_of(x: &Int) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Intersection of halfspaces `{x : <a_j, x> >= 0}`, as lineality plus
/// extreme rays. Halfspaces are scaled to primitive integer normals first;
/// zero rows are skipped (they constrain nothing).
pub fn dd_from_halfspaces(dim: usize, halfspaces: &[Vec<Rat>]) -> DdCone {
    let normals: Vec<Vec<Int>> = halfspaces.iter().map(|h| primitive_direction(h)).collect();
    dd_from_int_halfspaces(dim, &normals)
}

pub fn dd_from_int_halfspaces(dim: usize, normals: &[Vec<Int>]) -> DdCone {
    assert!(normals.len() <= MAX_HALFSPACES, "too many halfspaces for DD");
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (j, a) in normals.iter().enumerate() {
        assert_eq!(a.len(), dim);
        if a.iter().all(|x| x.is_zero()) {
            // Trivial halfspace: everything so far is in its boundary.
            for r in rays.iter_mut() {
                r.zero_set |= 1u128 << j;
            }
            continue;
        }
        let evals: Vec<Int> = lineality.iter().map(|l| dot_int(a, l)).collect();
        if let Some(k) = evals.iter().position(|e| !e.is_zero()) {
            // The lineality sticks out of the hyperplane: split off one
            // generator and project the rest into the boundary.
            let mut l0 = lineality.remove(k);
            let mut e0 = evals[k].clone();
            if e0.is_negative() {
                l0 = l0.iter().map(|x| -x.clone()).collect();
                e0 = -e0;
            }
            let mut new_lin = Vec::new();
            for (l, e) in lineality.iter().zip(evals.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, e)| e)) {
                let proj: Vec<Int> = l
                    .iter()
                    .zip(&l0)
                    .map(|(x, y)| x * &e0 - e * y)
                    .collect();
                if !proj.iter().all(|v| v.is_zero()) {
                    new_lin.push(primitive(&proj));
                }
            }
            lineality = new_lin;
            for r in rays.iter_mut() {
                let er = dot_int(a, &r.vector);
                let proj: Vec<Int> = r
                    .vector
                    .iter()
                    .zip(&l0)
                    .map(|(x, y)| x * &e0 - &er * y)
                    .collect();
                r.vector = primitive(&proj);
                r.zero_set |= 1u128 << j;
            }
            // Previously processed halfspaces all vanish on the lineality,
            // so the split-off generator is tight on every one of them.
            let mask = (1u128 << j) - 1;
            rays.push(DdRay {
                vector: l0,
                zero_set: mask,
            });
        } else {
            let evals: Vec<(usize, Int)> = rays
                .iter()
                .enumerate()
                .map(|(i, r)| (i, dot_int(a, &r.vector)))
                .collect();
            let pos: Vec<usize> = evals.iter().filter(|(_, e)| e.is_positive()).map(|(i, _)| *i).collect();
            let neg: Vec<usize> = evals.iter().filter(|(_, e)| e.is_negative()).map(|(i, _)| *i).collect();

            if neg.is_empty() {
                for (i, e) in &evals {
                    if e.is_zero() {
                        rays[*i].zero_set |= 1u128 << j;
                    }
                }
                continue;
            }

            let mut new_rays: Vec<DdRay> = Vec::new();
            for (i, e) in &evals {
                if !e.is_negative() {
                    let mut r = rays[*i].clone();
                    if e.is_zero() {
                        r.zero_set |= 1u128 << j;
                    }
                    new_rays.push(r);
                }
            }
            for &ip in &pos {
                for &im in &neg {
                    let common = rays[ip].zero_set & rays[im].zero_set;
                    // Combinatorial adjacency: no third ray's zero set
                    // contains the common zero set.
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(i3, r3)| i3 == ip || i3 == im || (common & !r3.zero_set) != 0);
                    if !adjacent {
                        continue;
                    }
                    let ep = &evals.iter().find(|(i, _)| *i == ip).unwrap().1;
                    let em = &evals.iter().find(|(i, _)| *i == im).unwrap().1;
                    // ep > 0, em < 0: combination lands on the hyperplane.
                    let v: Vec<Int> = rays[ip]
                        .vector
                        .iter()
                        .zip(&rays[im].vector)
                        .map(|(p, m)| p * (-em.clone()) + m * ep)
                        .collect();
                    debug_assert!(dot_int(a, &v).is_zero());
                    new_rays.push(DdRay {
                        vector: primitive(&v),
                        zero_set: common | (1u128 << j),
                    });
                }
            }
            rays = new_rays;
        }
    }

    DdCone {
        dim,
        lineality,
        rays,
    }
}

/// A finitely generated rational cone, stored by primitive integer
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    ambient_rank: usize,
    rays: Vec<Vec<Int>>,
}

impl RationalCone {
    pub fn from_rays(ambient_rank: usize, rays: Vec<Vec<Int>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for r in rays {
            if r.len() != ambient_rank {
                return Err(Error::InvalidInput(format!(
                    "ray length {} does not match ambient rank {}",
                    r.len(),
                    ambient_rank
                )));
            }
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            let p = primitive(&r);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        Ok(Self {
            ambient_rank,
            rays: out,
        })
    }

    pub fn from_i64_rays(ambient_rank: usize, rays: &[&[i64]]) -> Self {
        Self::from_rays(ambient_rank, rays.iter().map(|r| int_vec(r)).collect()).unwrap()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.rays.iter().map(|r| crate::arith::rat_from_int_vec(r)).collect();
        crate::arith::rat_rank(&rows)
    }

    /// The dual cone `{y : <y, x> >= 0 for all x in C}`, presented by
    /// primitive integer generators (with both signs of any lineality).
    pub fn dual(&self) -> RationalCone {
        let dd = dd_from_int_halfspaces(self.ambient_rank, &self.rays);
        RationalCone::from_rays(self.ambient_rank, dd.generators())
            .expect("dual generators are valid")
    }

    /// Supporting halfspace normals: generators of the dual cone. Every
    /// `n` in the result satisfies `<n, x> >= 0` on the cone, and together
    /// they cut it out.
    pub fn halfspace_normals(&self) -> Vec<Vec<Int>> {
        self.dual().rays.clone()
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.halfspace_normals()
            .iter()
            .all(|n| !crate::arith::dot_int_rat(n, v).is_negative())
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.halfspace_normals()
            .iter()
            .all(|n| !dot_int(n, v).is_negative())
    }

    /// Strongly convex = contains no line = the dual spans the ambient
    /// space.
    pub fn is_strongly_convex(&self) -> bool {
        self.dual().dim() == self.ambient_rank
    }

    /// Extreme rays, computed by cutting the cone out of its own
    /// supporting halfspaces.
    pub fn extreme_rays(&self) -> Vec<Vec<Int>> {
        let halfspaces = self.halfspace_normals();
        let dd = dd_from_int_halfspaces(self.ambient_rank, &halfspaces);
        dd.rays.into_iter().map(|r| r.vector).collect()
    }

    /// Facets as subsets of the generating rays: for every facet normal,
    /// the set of ray indices lying on it.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        let dim = self.dim();
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for n in self.halfspace_normals() {
            if n.iter().all(|x| x.is_zero()) {
                continue;
            }
            let onit: Vec<usize> = (0..self.rays.len())
                .filter(|&i| dot_int(&n, &self.rays[i]).is_zero())
                .collect();
            // A facet has dimension dim-1; skip lower faces coming from
            // lineality pairs of the dual.
            let rows: Vec<Vec<Rat>> = onit
                .iter()
                .map(|&i| crate::arith::rat_from_int_vec(&self.rays[i]))
                .collect();
            if crate::arith::rat_rank(&rows) + 1 == dim {
                out.insert(onit);
            }
        }
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat_vec};

    #[test]
    fn first_quadrant_membership_and_dual() {
        let c = RationalCone::from_i64_rays(2, &[&[1, 0], &[0, 1]]);
        assert!(c.contains_rat(&rat_vec(&[1, 1])));
        assert!(!c.contains_rat(&rat_vec(&[-1, 1])));
        // Self-dual.
        let d = c.dual();
        let mut rays = d.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn skew_cone_membership() {
        let c = RationalCone::from_i64_rays(2, &[&[1, 0], &[1, 2]]);
        assert!(c.contains_rat(&rat_vec(&[1, 1])));
        assert!(!c.contains_rat(&rat_vec(&[0, -1])));
        // Halfspace oracle: y >= 0 and 2x - y >= 0.
        for v in [[1i64, 0], [1, 2], [2, 1], [5, 3]] {
            assert!(c.contains_rat(&rat_vec(&v)));
            assert_eq!(v[1] >= 0 && 2 * v[0] - v[1] >= 0, true);
        }
        for v in [[0i64, 1], [-1, 0], [1, 3]] {
            let expect = v[1] >= 0 && 2 * v[0] - v[1] >= 0;
            assert_eq!(c.contains_rat(&rat_vec(&v)), expect);
        }
    }

    #[test]
    fn dual_of_halfline_has_lineality() {
        let c = RationalCone::from_i64_rays(2, &[&[1, 0]]);
        let d = c.dual();
        // Dual is the halfplane x >= 0: generated by (1,0), (0,1), (0,-1).
        assert!(d.contains_rat(&rat_vec(&[0, 5])));
        assert!(d.contains_rat(&rat_vec(&[0, -5])));
        assert!(d.contains_rat(&rat_vec(&[2, -7])));
        assert!(!d.contains_rat(&rat_vec(&[-1, 0])));
        assert!(!d.is_strongly_convex());
        assert!(c.is_strongly_convex());
    }

    #[test]
    fn extreme_rays_drop_redundant_generators() {
        let c = RationalCone::from_i64_rays(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        let mut ext = c.extreme_rays();
        ext.sort();
        assert_eq!(ext, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn full_space_cone() {
        let c = RationalCone::from_i64_rays(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert!(!c.is_strongly_convex());
        assert!(c.contains_rat(&rat_vec(&[-3, -4])));
        // Dual of everything is the origin: no nonzero generator survives.
        assert_eq!(c.dual().rays().len(), 0);
    }

    #[test]
    fn facets_of_simplicial_cone() {
        let c = RationalCone::from_i64_rays(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let facets = c.facet_ray_sets();
        assert_eq!(facets.len(), 3);
        for f in facets {
            assert_eq!(f.len(), 2);
        }
    }
}
