//! Multivariate polynomial gcd over Z.
//!
//! The main route is the heuristic gcd: evaluate one variable at a large integer,
//! recurse, lift the result back by balanced base-`xi` digits, and certify the
//! candidate by trial division. A primitive pseudo-remainder sequence handles the
//! rare inputs where every evaluation point is unlucky.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::poly::{min_exps, Exps, Poly};
use crate::NVARS;

const HEU_ATTEMPTS: usize = 6;

/// Greatest common divisor with positive leading coefficient (zero only for two zeros).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = min_exps(&ma, &mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let g = if a.is_constant() || b.is_constant() {
        Poly::one()
    } else {
        let a = a.div_int(&ca);
        let b = b.div_int(&cb);
        primitive_gcd(&a, &b)
    };
    g.mul_term(&m, &c).normalize_sign()
}

/// Gcd of two primitive, non-constant polynomials without monomial factors.
fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    let sa = a.support();
    let sb = b.support();
    if sa != sb {
        // A variable present in only one argument: the gcd divides every coefficient
        // of that argument with respect to the variable.
        let (with, without, var) = if sa & !sb != 0 {
            (a, b, (sa & !sb).trailing_zeros() as usize)
        } else {
            (b, a, (sb & !sa).trailing_zeros() as usize)
        };
        let mut coeffs = with.coeffs_in(var);
        coeffs.sort_by_key(|c| c.len());
        let mut g = without.clone();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            g = gcd(&g, c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return g;
    }
    for var in 0..NVARS {
        if sa & (1 << var) == 0 {
            continue;
        }
        let k = a.exponent_gcd(var).gcd(&b.exponent_gcd(var));
        if k > 1 {
            let g = gcd(&a.deflate(var, k), &b.deflate(var, k));
            return g.inflate(var, k);
        }
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    let var = (31 - sa.leading_zeros()) as usize;
    if let Some(g) = heuristic(a, b, var) {
        return g;
    }
    prs(a, b, var)
}

fn heuristic(a: &Poly, b: &Poly, var: usize) -> Option<Poly> {
    let norm = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..HEU_ATTEMPTS {
        let ae = a.eval_var(var, &xi);
        let be = b.eval_var(var, &xi);
        if !ae.is_zero() && !be.is_zero() {
            let h = gcd(&ae, &be);
            let cand = interpolate(&h, var, &xi);
            if !cand.is_zero() {
                let cand = cand.div_int(&cand.content()).normalize_sign();
                if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
        let root = xi.sqrt().sqrt();
        xi = (&xi * BigInt::from(73794) * root) / BigInt::from(27011);
    }
    None
}

/// Lifts an image under `var -> xi` back to a polynomial using balanced digits.
fn interpolate(h: &Poly, var: usize, xi: &BigInt) -> Poly {
    let half: BigInt = xi / 2;
    let mut terms: Vec<(Exps, BigInt)> = Vec::new();
    for (e, c) in h.terms() {
        let mut c = c.clone();
        let mut k = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut ne = *e;
                ne[var] = k;
                terms.push((ne, d.clone()));
            }
            c = (c - d) / xi;
            k += 1;
        }
    }
    Poly::from_terms(terms)
}

/// Content with respect to `var`: gcd of the coefficient polynomials.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut coeffs = p.coeffs_in(var);
    coeffs.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn pp_in(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides")
}

/// Primitive pseudo-remainder sequence in `var`.
fn prs(a: &Poly, b: &Poly, var: usize) -> Poly {
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if g.degree_in(var) == 0 {
            f = Poly::one();
            break;
        }
        let r = f.prem(&g, var);
        f = g;
        g = if r.is_zero() { r } else { pp_in(&r, var) };
    }
    let f = f.div_int(&f.content());
    f.mul(&c).normalize_sign()
}

/// Exposes the fallback route so tests can compare it with the default one.
pub fn gcd_prs(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant() {
        return gcd(a, b);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = min_exps(&ma, &mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);
    let vars = a.support() | b.support();
    let g = if vars == 0 {
        Poly::one()
    } else {
        let var = (31 - vars.leading_zeros()) as usize;
        if a.degree_in(var) == 0 || b.degree_in(var) == 0 {
            primitive_gcd(&a, &b)
        } else {
            prs(&a, &b, var)
        }
    };
    g.mul_term(&m, &c).normalize_sign()
}
