//! Exact scalar arithmetic and small rational linear algebra.
//!
//! Everything in this crate computes over arbitrary-precision integers and
//! rationals. There are no floating-point values and no tolerances anywhere;
//! equality means equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an integer constant.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for a rational constant `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from(Int::from(x))).collect()
}

pub fn rat_from_int_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from(x.clone())).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| Rat::from(x.clone()) * y).sum()
}

/// Gcd of all entries, zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Divide a nonzero integer vector by its content, making it primitive.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive(v: &[Int]) -> bool {
    content(v).is_one()
}

/// Scale a rational vector by the lcm of denominators and reduce to a
/// primitive integer vector pointing the same way. Zero stays zero.
pub fn primitive_direction(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

pub fn is_zero_vec_int(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn is_zero_vec_rat(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_rat_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_rat_vec(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

/// Render a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` back into a rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<Int>().ok().map(Rat::from),
        Some((n, d)) => {
            let n = n.trim().parse::<Int>().ok()?;
            let d = d.trim().parse::<Int>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

/// Reduced row echelon form over the rationals, in place.
/// Returns the list of pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

/// Solve `A x = b` over the rationals where `A` is given by rows.
/// Returns one solution (free variables set to zero), or None if
/// inconsistent.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let nrows = a.len();
    assert_eq!(nrows, b.len());
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Basis of the right kernel of a rational matrix (rows of the result).
pub fn rat_kernel(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let nrows = a.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_reduces_content() {
        assert_eq!(primitive(&int_vec(&[2, 4, -6])), int_vec(&[1, 2, -3]));
        assert_eq!(primitive(&int_vec(&[0, 0])), int_vec(&[0, 0]));
        assert!(is_primitive(&int_vec(&[3, 5])));
        assert!(!is_primitive(&int_vec(&[2, 4])));
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = vec![rat(1, 2), rat(-3, 4)];
        assert_eq!(primitive_direction(&v), int_vec(&[2, -3]));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-7", "3/2", "-22/7"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert!(rat_from_str("1/0").is_none());
    }

    #[test]
    fn solve_and_kernel() {
        // x + y = 3, x - y = 1 -> (2, 1)
        let a = vec![rat_vec(&[1, 1]), rat_vec(&[1, -1])];
        let b = rat_vec(&[3, 1]);
        assert_eq!(solve_rat(&a, &b).unwrap(), rat_vec(&[2, 1]));

        // inconsistent
        let a = vec![rat_vec(&[1, 1]), rat_vec(&[2, 2])];
        let b = rat_vec(&[1, 3]);
        assert!(solve_rat(&a, &b).is_none());

        let k = rat_kernel(&[rat_vec(&[1, 1, 0])]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1]).is_zero());
        }
    }
}
