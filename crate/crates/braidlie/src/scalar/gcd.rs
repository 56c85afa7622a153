//! Polynomial gcd by primitive pseudo-remainder sequences.
//!
//! Univariate polynomials over the rationals use monic Euclid; multivariate
//! ones recurse on the main variable with contents taken in one fewer
//! variable. Results are normalized monic so gcds are canonical.

use num_traits::One;

use super::poly::MPoly;
use super::Var;

/// Monic gcd; `gcd(0, 0) = 0`, constants are units.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // Pull out the monomial part first; it is cheap and very common here.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let ar = a
        .exact_div(&MPoly::monomial(ma, num_rational::BigRational::one()))
        .unwrap();
    let br = b
        .exact_div(&MPoly::monomial(mb, num_rational::BigRational::one()))
        .unwrap();
    let core = gcd_inner(&ar, &br);
    core.mul(&MPoly::monomial(mg, num_rational::BigRational::one()))
        .monic()
}

fn gcd_inner(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    // Main variable: the smallest, so recursion peels variables deterministically.
    let x = vars[0];
    if vars.len() == 1 {
        return univariate_gcd(a, b, x);
    }
    if a.degree_in(x) == 0 || b.degree_in(x) == 0 {
        // One side is free of the main variable: gcd divides its coefficients.
        let (free, other) = if a.degree_in(x) == 0 { (a, b) } else { (b, a) };
        let mut g = free.clone();
        for c in other.coeffs_in(x) {
            if g.is_one() {
                break;
            }
            g = gcd_inner(&g, &c);
        }
        return g.monic();
    }

    let (ca, pa) = content_and_primitive(a, x);
    let (cb, pb) = content_and_primitive(b, x);
    let cg = gcd_inner(&ca, &cb);

    // Primitive pseudo-remainder sequence in x.
    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            let (_, pg) = content_and_primitive(&g, x);
            return cg.mul(&pg).monic();
        }
        if r.degree_in(x) == 0 {
            return cg.monic();
        }
        let (_, pr) = content_and_primitive(&r, x);
        f = g;
        g = pr;
    }
}

/// Content (gcd of coefficients in `x`) and primitive part.
fn content_and_primitive(p: &MPoly, x: Var) -> (MPoly, MPoly) {
    let coeffs = p.coeffs_in(x);
    let mut c = MPoly::zero();
    for co in &coeffs {
        if co.is_zero() {
            continue;
        }
        c = gcd_inner(&c, co);
        if c.is_one() {
            break;
        }
    }
    if c.is_zero() {
        return (MPoly::zero(), MPoly::zero());
    }
    let pp = p.exact_div(&c).expect("content divides");
    (c, pp)
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
fn pseudo_rem(a: &MPoly, b: &MPoly, x: Var) -> MPoly {
    let db = b.degree_in(x);
    let bc = b.coeffs_in(x);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(x);
        if dr < db {
            break;
        }
        let rc = r.coeffs_in(x);
        let lr = rc[dr as usize].clone();
        // r <- lb*r - lr*x^(dr-db)*b
        let shift = MPoly::from_coeffs_in(x, &{
            let mut v = vec![MPoly::zero(); (dr - db) as usize];
            v.push(lr);
            v
        });
        r = r.mul(&lb).sub(&shift.mul(b));
    }
    r
}

fn univariate_gcd(a: &MPoly, b: &MPoly, x: Var) -> MPoly {
    // Coefficients are rationals (a field): plain Euclid with monic steps.
    let mut f = a.monic();
    let mut g = b.monic();
    while !g.is_zero() {
        let r = poly_rem(&f, &g, x);
        f = g;
        g = if r.is_zero() { MPoly::zero() } else { r.monic() };
    }
    f.monic()
}

fn poly_rem(a: &MPoly, b: &MPoly, x: Var) -> MPoly {
    let db = b.degree_in(x);
    let bc = b.coeffs_in(x);
    let lb = bc[db as usize]
        .as_constant()
        .expect("univariate leading coefficient");
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(x);
        if dr < db {
            break;
        }
        let rc = r.coeffs_in(x);
        let lr = rc[dr as usize].as_constant().expect("univariate");
        let q = lr / &lb;
        let mut v = vec![MPoly::zero(); (dr - db) as usize];
        v.push(MPoly::constant(q));
        let shift = MPoly::from_coeffs_in(x, &v);
        r = r.sub(&shift.mul(b));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }

    fn r(i: u8, j: u8) -> MPoly {
        MPoly::var(Var::R(i, j))
    }

    #[test]
    fn univariate() {
        let a = q().pow(2).sub(&MPoly::one());
        let b = q().sub(&MPoly::one());
        assert_eq!(gcd(&a, &b), b.monic());
        assert_eq!(gcd(&a, &q().add(&MPoly::one())), q().add(&MPoly::one()));
        assert_eq!(gcd(&a, &q().add(&MPoly::from_int(5))), MPoly::one());
    }

    #[test]
    fn multivariate() {
        // gcd((q^2-1)(r12+q), (q-1)(r12+q)^2) = (q-1)(r12+q)
        let f = q().pow(2).sub(&MPoly::one()).mul(&r(1, 2).add(&q()));
        let g = q().sub(&MPoly::one()).mul(&r(1, 2).add(&q()).pow(2));
        let want = q().sub(&MPoly::one()).mul(&r(1, 2).add(&q())).monic();
        assert_eq!(gcd(&f, &g), want);
    }

    #[test]
    fn monomial_contents() {
        let f = q().pow(3).mul(&r(1, 2));
        let g = q().mul(&r(1, 2).pow(2));
        assert_eq!(gcd(&f, &g), q().mul(&r(1, 2)));
    }

    #[test]
    fn coprime_multivariate() {
        let f = q().mul(&r(1, 2)).add(&MPoly::one());
        let g = q().add(&r(1, 2));
        assert_eq!(gcd(&f, &g), MPoly::one());
    }

    #[test]
    fn three_variables() {
        let common = q().add(&r(1, 2)).add(&r(1, 3));
        let f = common.mul(&q().pow(2).add(&MPoly::one()));
        let g = common.mul(&r(1, 3).sub(&MPoly::from_int(2)));
        assert_eq!(gcd(&f, &g), common.monic());
    }
}
