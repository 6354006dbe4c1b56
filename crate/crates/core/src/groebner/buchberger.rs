use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{same_ring, FieldElement, Monomial, Polynomial, Ring};
use crate::jets::AffineIdeal;

use super::{GroebnerError, LimitKind, MonomialOrder, Result};

/// Resource caps for one basis computation. Exceeding any of them aborts
/// the computation with [`GroebnerError::ResourceExhausted`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_reductions: u64,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_degree: 40, max_reductions: 1_000_000, time_budget: Duration::from_secs(300) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    /// Pairs taken from the queue, including those removed by a criterion.
    pub pairs_considered: u64,
    /// S-polynomials actually formed and reduced.
    pub pairs_reduced: u64,
    pub skipped_product: u64,
    pub skipped_chain: u64,
    /// Largest total degree of an S-polynomial or remainder.
    pub max_degree: u32,
    pub elapsed: Duration,
}

type Term = (Monomial, FieldElement);

/// Terms sorted from the largest monomial down under the active order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SortedPoly(Vec<Term>);

impl SortedPoly {
    fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self(terms)
    }

    fn to_polynomial(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.0.iter().cloned()).expect("terms from the same ring")
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.0[0].0
    }

    fn lc(&self) -> &FieldElement {
        &self.0[0].1
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.is_one()
    }

    fn degree(&self) -> u32 {
        self.0.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn scale(&mut self, c: &FieldElement) {
        for (_, a) in self.0.iter_mut() {
            *a = &*a * c;
        }
    }
}

/// Coefficient handling: over ℚ intermediate polynomials are kept as
/// primitive integer polynomials, elsewhere they are kept monic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arith {
    FractionFree,
    Field,
}

fn int_of(c: &FieldElement) -> &BigInt {
    c.as_rational().expect("rational coefficient").numer()
}

fn int_elem(n: BigInt) -> FieldElement {
    FieldElement::rational(BigRational::from_integer(n))
}

fn normalize(p: &mut SortedPoly, arith: Arith) {
    if p.is_zero() {
        return;
    }
    match arith {
        Arith::Field => {
            if !p.lc().is_one() {
                let inv = p.lc().inverse().expect("nonzero leading coefficient");
                p.scale(&inv);
            }
        }
        Arith::FractionFree => {
            let mut den_lcm = BigInt::one();
            let mut num_gcd = BigInt::zero();
            for (_, c) in &p.0 {
                let q = c.as_rational().expect("rational coefficient");
                den_lcm = den_lcm.lcm(q.denom());
                num_gcd = num_gcd.gcd(q.numer());
            }
            if p.lc().as_rational().expect("rational").is_negative() {
                num_gcd = -num_gcd;
            }
            let factor = FieldElement::rational(BigRational::new(den_lcm, num_gcd));
            if !factor.is_one() {
                p.scale(&factor);
            }
        }
    }
}

/// `alpha * f - beta * t * g`, where the terms `f[..k]` are known to exceed
/// every term of `t * g`.
fn combine(
    f: &[Term],
    k: usize,
    alpha: Option<&FieldElement>,
    beta: &FieldElement,
    t: &Monomial,
    g: &[Term],
    order: &MonomialOrder,
) -> Vec<Term> {
    let scaled = |c: &FieldElement| match alpha {
        Some(a) => c * a,
        None => c.clone(),
    };
    let mut out = Vec::with_capacity(f.len() + g.len());
    out.extend(f[..k].iter().map(|(m, c)| (m.clone(), scaled(c))));
    let mut i = k;
    let mut j = 0;
    let mut tg: Option<Monomial> = g.first().map(|(m, _)| m.mul(t));
    while i < f.len() || j < g.len() {
        let take = match (f.get(i), &tg) {
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((fm, _)), Some(gm)) => order.cmp(fm, gm),
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push((f[i].0.clone(), scaled(&f[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((tg.take().expect("pending"), -&(beta * &g[j].1)));
                j += 1;
                tg = g.get(j).map(|(m, _)| m.mul(t));
            }
            Ordering::Equal => {
                let c = &scaled(&f[i].1) - &(beta * &g[j].1);
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                tg = g.get(j).map(|(m, _)| m.mul(t));
            }
        }
    }
    out
}

/// Bit `v % 64` is set when some variable `v` occurs; a necessary condition
/// for divisibility that is cheap to test.
fn divmask(m: &Monomial) -> u64 {
    m.support().fold(0, |acc, v| acc | 1u64 << (v % 64))
}

#[derive(Debug, Clone)]
struct Elem {
    poly: SortedPoly,
    lm: Monomial,
    mask: u64,
}

impl Elem {
    fn new(poly: SortedPoly) -> Self {
        let lm = poly.lm().clone();
        let mask = divmask(&lm);
        Self { poly, lm, mask }
    }
}

struct Budget<'a> {
    limits: &'a Limits,
    start: Instant,
    stats: GroebnerStats,
}

impl Budget<'_> {
    fn exhausted(&mut self, limit: LimitKind) -> GroebnerError {
        self.stats.elapsed = self.start.elapsed();
        GroebnerError::ResourceExhausted { limit, stats: self.stats.clone() }
    }

    fn check_time(&mut self) -> Result<()> {
        if self.start.elapsed() > self.limits.time_budget {
            return Err(self.exhausted(LimitKind::Time(self.limits.time_budget)));
        }
        Ok(())
    }

    fn note_degree(&mut self, d: u32) -> Result<()> {
        self.stats.max_degree = self.stats.max_degree.max(d);
        if d > self.limits.max_degree {
            return Err(self.exhausted(LimitKind::Degree(self.limits.max_degree)));
        }
        Ok(())
    }
}

/// Fully reduces `f` modulo `basis`.
fn reduce(
    mut f: SortedPoly,
    basis: &[Elem],
    order: &MonomialOrder,
    arith: Arith,
    mut budget: Option<&mut Budget<'_>>,
) -> Result<SortedPoly> {
    let mut k = 0;
    let mut steps = 0u64;
    while k < f.0.len() {
        let (u, c) = &f.0[k];
        let umask = divmask(u);
        let Some(g) = basis.iter().find(|g| g.mask & !umask == 0 && g.lm.divides(u)) else {
            k += 1;
            continue;
        };
        let t = u.div(&g.lm).expect("divisible");
        let next = match arith {
            Arith::Field => {
                let beta = c / g.poly.lc();
                combine(&f.0, k, None, &beta, &t, &g.poly.0, order)
            }
            Arith::FractionFree => {
                let (a, b) = (int_of(g.poly.lc()), int_of(c));
                let h = a.gcd(b);
                let alpha = int_elem(a / &h);
                let beta = int_elem(b / &h);
                let alpha = (!alpha.is_one()).then_some(alpha);
                combine(&f.0, k, alpha.as_ref(), &beta, &t, &g.poly.0, order)
            }
        };
        f = SortedPoly(next);
        steps += 1;
        if steps % 16 == 0 {
            if arith == Arith::FractionFree {
                normalize(&mut f, arith);
            }
            if let Some(b) = budget.as_deref_mut() {
                b.check_time()?;
            }
        }
    }
    normalize(&mut f, arith);
    Ok(f)
}

fn s_polynomial(f: &Elem, g: &Elem, order: &MonomialOrder, arith: Arith) -> SortedPoly {
    let lcm = f.lm.lcm(&g.lm);
    let tf = lcm.div(&f.lm).expect("divisible");
    let tg = lcm.div(&g.lm).expect("divisible");
    let (a, b) = match arith {
        Arith::Field => (f.poly.lc().inverse().expect("nonzero"), g.poly.lc().inverse().expect("nonzero")),
        Arith::FractionFree => {
            let (x, y) = (int_of(f.poly.lc()), int_of(g.poly.lc()));
            let h = x.gcd(y);
            (int_elem(y / &h), int_elem(x / &h))
        }
    };
    let first: Vec<Term> = f.poly.0.iter().map(|(m, c)| (m.mul(&tf), c * &a)).collect();
    SortedPoly(combine(&first, 0, None, &b, &tg, &g.poly.0, order))
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A reduced Gröbner basis: monic, with no term of any element divisible by
/// another element's leading monomial. Elements are sorted by increasing
/// leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    sorted: Vec<Elem>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.sorted.iter().map(|e| &e.lm)
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0].poly.is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(GroebnerError::RingMismatch);
        }
        let mut f = SortedPoly::from_polynomial(f, &self.order);
        let mut k = 0;
        while k < f.0.len() {
            let (u, c) = &f.0[k];
            let umask = divmask(u);
            match self.sorted.iter().find(|g| g.mask & !umask == 0 && g.lm.divides(u)) {
                Some(g) => {
                    let t = u.div(&g.lm).expect("divisible");
                    let beta = c.clone();
                    f = SortedPoly(combine(&f.0, k, None, &beta, &t, &g.poly.0, &self.order));
                }
                None => k += 1,
            }
        }
        Ok(f.to_polynomial(&self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn self_check(&self, generators: &[Polynomial]) -> Result<()> {
        for g in generators {
            if !self.contains(g)? {
                return Err(GroebnerError::SelfCheckFailed(format!("generator {g} does not reduce to zero")));
            }
        }
        for (i, a) in self.sorted.iter().enumerate() {
            for b in &self.sorted[i + 1..] {
                if a.lm.is_coprime(&b.lm) {
                    continue;
                }
                let s = s_polynomial(a, b, &self.order, Arith::Field);
                let r = reduce(s, &self.sorted, &self.order, Arith::Field, None)?;
                if !r.is_zero() {
                    return Err(GroebnerError::SelfCheckFailed(format!(
                        "S-polynomial of {} and {} does not reduce to zero",
                        a.poly.to_polynomial(&self.ring),
                        b.poly.to_polynomial(&self.ring)
                    )));
                }
            }
        }
        for (i, a) in self.sorted.iter().enumerate() {
            for (j, b) in self.sorted.iter().enumerate() {
                if i != j && b.poly.0.iter().any(|(m, _)| a.lm.divides(m)) {
                    return Err(GroebnerError::SelfCheckFailed("basis is not reduced".into()));
                }
            }
        }
        Ok(())
    }
}

static SELF_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of bases that have passed the post-computation check in this
/// process.
pub fn self_checks_passed() -> u64 {
    SELF_CHECKS.load(AtomicOrdering::Relaxed)
}

/// `f` modulo `basis`.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.normal_form(f)
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Computes the reduced Gröbner basis of `ideal` under `order`.
///
/// Pairs are processed smallest lcm first, with Buchberger's product and
/// chain criteria. The result is checked before it is returned: every input
/// generator and every S-polynomial of the output must reduce to zero.
pub fn buchberger(ideal: &AffineIdeal, order: &MonomialOrder, limits: &Limits) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    order.validate(ring.nvars())?;
    let arith = if ring.field().is_rationals() { Arith::FractionFree } else { Arith::Field };
    let mut budget = Budget { limits, start: Instant::now(), stats: GroebnerStats::default() };

    let mut basis: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut unit = false;

    let insert = |basis: &mut Vec<Elem>, pairs: &mut Vec<Pair>, pending: &mut HashSet<_>, p: SortedPoly| {
        let new = Elem::new(p);
        let r = basis.len();
        for (i, e) in basis.iter().enumerate() {
            pairs.push(Pair { i, j: r, lcm: e.lm.lcm(&new.lm) });
            pending.insert((i, r));
        }
        basis.push(new);
    };

    for g in ideal.nonzero_generators() {
        let mut p = SortedPoly::from_polynomial(g, order);
        normalize(&mut p, arith);
        budget.note_degree(p.degree())?;
        if p.is_constant() {
            unit = true;
            break;
        }
        insert(&mut basis, &mut pairs, &mut pending, p);
    }

    while !unit && !pairs.is_empty() {
        budget.check_time()?;
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order.cmp(&pa.lcm, &pb.lcm).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(idx);
        pending.remove(&(i, j));
        budget.stats.pairs_considered += 1;

        if basis[i].lm.is_coprime(&basis[j].lm) {
            budget.stats.skipped_product += 1;
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm.divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chain {
            budget.stats.skipped_chain += 1;
            continue;
        }

        if budget.stats.pairs_reduced >= limits.max_reductions {
            return Err(budget.exhausted(LimitKind::Reductions(limits.max_reductions)));
        }
        budget.stats.pairs_reduced += 1;
        let s = s_polynomial(&basis[i], &basis[j], order, arith);
        budget.note_degree(s.degree())?;
        let r = reduce(s, &basis, order, arith, Some(&mut budget))?;
        if r.is_zero() {
            continue;
        }
        budget.note_degree(r.degree())?;
        if r.is_constant() {
            unit = true;
            break;
        }
        insert(&mut basis, &mut pairs, &mut pending, r);
    }

    let sorted = if unit {
        let one = Polynomial::one(&ring);
        vec![Elem::new(SortedPoly::from_polynomial(&one, order))]
    } else {
        interreduce(basis, order, arith, &mut budget)?
    };
    budget.stats.elapsed = budget.start.elapsed();
    let elements = sorted.iter().map(|e| e.poly.to_polynomial(&ring)).collect();
    let gb = GroebnerBasis { ring, order: order.clone(), elements, sorted, stats: budget.stats };
    gb.self_check(ideal.generators())?;
    SELF_CHECKS.fetch_add(1, AtomicOrdering::Relaxed);
    Ok(gb)
}

/// Drops elements with redundant leading monomials, tail-reduces the rest
/// and makes everything monic.
fn interreduce(basis: Vec<Elem>, order: &MonomialOrder, arith: Arith, budget: &mut Budget<'_>) -> Result<Vec<Elem>> {
    let mut elems = basis;
    elems.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    let mut minimal: Vec<Elem> = Vec::new();
    for e in elems {
        if !minimal.iter().any(|m| m.lm.divides(&e.lm)) {
            minimal.push(e);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Elem> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, e)| e.clone()).collect();
        let lead = minimal[idx].poly.0[0].clone();
        let tail = SortedPoly(minimal[idx].poly.0[1..].to_vec());
        // The leading term is irreducible, so reduce head and tail together.
        let mut whole = vec![lead];
        whole.extend(tail.0);
        let mut r = reduce(SortedPoly(whole), &others, order, arith, Some(budget))?;
        normalize(&mut r, Arith::Field);
        out.push(Elem::new(r));
    }
    out.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, FieldSpec, VariableContext};

    fn ideal(field: FieldSpec, vars: &[&str], gens: &[&str]) -> AffineIdeal {
        let ring = VariableContext::new(field, vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        AffineIdeal::new(&ring, gens).unwrap()
    }

    fn basis_strings(i: &AffineIdeal, order: MonomialOrder) -> Vec<String> {
        buchberger(i, &order, &Limits::default()).unwrap().elements().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn containment() {
        let i = ideal(FieldSpec::rationals(), &["x"], &["x^2", "x"]);
        assert_eq!(basis_strings(&i, MonomialOrder::DegRevLex), ["x"]);
    }

    #[test]
    fn linear_system_char_zero_and_two() {
        let i = ideal(FieldSpec::rationals(), &["x", "y"], &["x + y", "x - y"]);
        assert_eq!(basis_strings(&i, MonomialOrder::DegRevLex), ["y", "x"]);
        let i = ideal(FieldSpec::prime(2).unwrap(), &["x", "y"], &["x + y", "x - y"]);
        assert_eq!(basis_strings(&i, MonomialOrder::DegRevLex), ["x + y"]);
    }

    #[test]
    fn normal_form_examples() {
        let i = ideal(FieldSpec::rationals(), &["x", "y"], &["x - y"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        let x2 = parse_polynomial("x^2", i.ring()).unwrap();
        assert_eq!(normal_form(&x2, &gb).unwrap().to_string(), "y^2");
        let one = Polynomial::one(i.ring());
        assert_eq!(normal_form(&one, &gb).unwrap(), one);
        let f = parse_polynomial("3*x*y + 2", i.ring()).unwrap();
        assert_eq!(normal_form(&f, &gb).unwrap().to_string(), "3*y^2 + 2");
        for g in i.generators() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_ideal() {
        let i = ideal(FieldSpec::rationals(), &["x", "y"], &["x*y - 1", "x"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn twisted_cubic_over_q() {
        let i = ideal(FieldSpec::rationals(), &["x", "y", "z", "w"], &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        assert_eq!(gb.elements().len(), 3);
        let lex = buchberger(&i, &MonomialOrder::Lex, &Limits::default()).unwrap();
        for g in gb.elements() {
            assert!(lex.contains(&g.embed(lex.ring()).unwrap()).unwrap());
        }
    }

    #[test]
    fn rational_coefficients_are_made_monic() {
        let i = ideal(FieldSpec::rationals(), &["x", "y"], &["2*x^2 + 3*y", "1/2*x*y - y^2"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        for e in gb.elements() {
            assert!(e.terms().next().unwrap().1.is_one());
        }
    }

    #[test]
    fn deterministic_output() {
        let i = ideal(FieldSpec::prime(7).unwrap(), &["a", "b", "c"], &["a^2 + b*c", "b^2 - a*c + 1", "c^3 - a"]);
        let a = basis_strings(&i, MonomialOrder::DegRevLex);
        let b = basis_strings(&i, MonomialOrder::DegRevLex);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_limit_is_reported() {
        let i = ideal(FieldSpec::rationals(), &["x", "y"], &["x^3 - y^2", "x*y^2 - x^2"]);
        let limits = Limits { max_degree: 3, ..Limits::default() };
        match buchberger(&i, &MonomialOrder::DegRevLex, &limits) {
            Err(GroebnerError::ResourceExhausted { limit: LimitKind::Degree(3), stats }) => {
                assert!(stats.max_degree > 3)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduction_limit_is_reported() {
        let i = ideal(FieldSpec::rationals(), &["x", "y", "z"], &["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"]);
        let limits = Limits { max_reductions: 1, ..Limits::default() };
        assert!(matches!(
            buchberger(&i, &MonomialOrder::DegRevLex, &limits),
            Err(GroebnerError::ResourceExhausted { limit: LimitKind::Reductions(1), .. })
        ));
    }

    #[test]
    fn function_field_coefficients() {
        let f = FieldSpec::rational_functions(3, "s").unwrap();
        let i = ideal(f, &["x", "y"], &["s*x - y", "x^2 - (s+1)*y"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        for g in i.generators() {
            assert!(gb.contains(g).unwrap());
        }
    }
}
