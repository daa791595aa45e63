//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are keyed by monomials under the graded lexicographic order induced
//! by symbol creation order (earlier symbol = more significant variable).
//! The term map never stores zero coefficients, so structural equality is
//! semantic equality for plain polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::workspace::{CirclePair, SymbolId, Workspace};

/// Exponent vector, sorted by symbol id ascending, all exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<(SymbolId, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(id: SymbolId) -> Self {
        Monomial(vec![(id, 1)])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, id: SymbolId) -> u32 {
        self.0
            .iter()
            .find(|&&(s, _)| s == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise quotient; `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            let mut e_out = e;
            while j < other.0.len() && other.0[j].0 < s {
                return None; // divisor has a variable we lack
            }
            if j < other.0.len() && other.0[j].0 == s {
                if other.0[j].1 > e {
                    return None;
                }
                e_out = e - other.0[j].1;
                j += 1;
            }
            if e_out > 0 {
                out.push((s, e_out));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Remove `sym` entirely, returning (exponent, remaining monomial).
    pub fn split_symbol(&self, sym: SymbolId) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for &(s, e) in &self.0 {
            if s == sym {
                exp = e;
            } else {
                rest.push((s, e));
            }
        }
        (exp, Monomial(rest))
    }

    pub fn contains(&self, sym: SymbolId) -> bool {
        self.0.iter().any(|&(s, _)| s == sym)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: higher total degree ranks higher; ties are broken
/// lexicographically, treating the earliest-created symbol as most
/// significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // Whichever side has a positive exponent on the earlier
                // symbol wins the lexicographic comparison.
                (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

/// Sparse polynomial over `BigRational`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn symbol(id: SymbolId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::symbol(id), BigRational::one());
        Poly { terms }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: SymbolId) -> u32 {
        self.terms.keys().map(|m| m.degree_in(sym)).max().unwrap_or(0)
    }

    /// Leading (monomial, coefficient) under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut out: Vec<SymbolId> = Vec::new();
        for m in self.terms.keys() {
            for &(s, _) in &m.0 {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    pub fn contains_symbol(&self, sym: SymbolId) -> bool {
        self.terms.keys().any(|m| m.contains(sym))
    }

    fn insert_add(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        self.mul_term(&Monomial::unit(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut out = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Formal partial derivative with respect to one symbol.
    pub fn derivative(&self, sym: SymbolId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_symbol(sym);
            if e == 0 {
                continue;
            }
            let mut mono = rest;
            if e > 1 {
                mono = mono.mul(&Monomial(vec![(sym, e - 1)]));
            }
            out.insert_add(mono, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Evaluate at a full assignment; `None` when a symbol is unassigned.
    pub fn eval(&self, assignment: &HashMap<SymbolId, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(s, e) in &m.0 {
                let x = assignment.get(&s)?;
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Some(total)
    }

    /// Substitute `sym -> num/den`; result is `(poly, den^max_degree)` so the
    /// caller can form an exact rational expression.
    pub fn substitute(&self, sym: SymbolId, num: &Poly, den: &Poly) -> (Poly, Poly) {
        let d = self.degree_in(sym);
        if d == 0 {
            return (self.clone(), Poly::one());
        }
        // Precompute num^k * den^(d-k).
        let mut num_pows = vec![Poly::one()];
        let mut den_pows = vec![Poly::one()];
        for k in 1..=d {
            let np = num_pows[k as usize - 1].mul(num);
            num_pows.push(np);
            let dp = den_pows[k as usize - 1].mul(den);
            den_pows.push(dp);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_symbol(sym);
            let factor = num_pows[e as usize].mul(&den_pows[(d - e) as usize]);
            out = out.add(&factor.mul_term(&rest, c));
        }
        (out, den_pows[d as usize].clone())
    }

    /// Rewrite `cos^k` for `k >= 2` using `cos^2 = 1 - sin^2` for every
    /// declared pair. Leaves cosine degree at most one.
    pub fn reduce_circle(&self, pairs: &[CirclePair]) -> Poly {
        if pairs.is_empty() {
            return self.clone();
        }
        let mut cur = self.clone();
        for pair in pairs {
            loop {
                let mut next = Poly::zero();
                let mut changed = false;
                for (m, c) in &cur.terms {
                    let (e, rest) = m.split_symbol(pair.cos);
                    if e >= 2 {
                        changed = true;
                        // cos^e = cos^(e mod 2) * (1 - sin^2)^(e div 2)
                        let sin_sq = Poly::symbol(pair.sin).mul(&Poly::symbol(pair.sin));
                        let repl = Poly::one().sub(&sin_sq).pow(e / 2);
                        let mut mono = rest;
                        if e % 2 == 1 {
                            mono = mono.mul(&Monomial::symbol(pair.cos));
                        }
                        next = next.add(&repl.mul_term(&mono, c));
                    } else {
                        next.insert_add(m.clone(), c.clone());
                    }
                }
                cur = next;
                if !changed {
                    break;
                }
            }
        }
        cur
    }

    /// Exact multivariate division; `None` when `other` does not divide.
    pub fn divexact(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let mut quotient = Poly::zero();
        let mut rem = self.clone();
        let (lm_b, lc_b) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (lm_r, lc_r) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let m_q = lm_r.div(&lm_b)?;
            let c_q = lc_r / &lc_b;
            let t = Poly::term(m_q, c_q);
            quotient = quotient.add(&t);
            rem = rem.sub(&t.mul(other));
        }
        Some(quotient)
    }

    /// Clear rational denominators and integer content: returns the integer
    /// primitive part with positive leading coefficient, i.e. this polynomial
    /// times a positive rational.
    pub fn primitive_normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int_c = c.numer() * (&denom_lcm / c.denom());
            content = num_integer::gcd(content, int_c);
        }
        if content.is_zero() {
            return Poly::zero();
        }
        let scale = BigRational::new(denom_lcm, content);
        let mut out = self.scale(&scale);
        if out.leading().map_or(false, |(_, c)| c.is_negative()) {
            out = out.neg();
        }
        out
    }

    /// Greatest common divisor, returned integer-primitive with positive
    /// leading coefficient. Treats all symbols as independent variables.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let a = self.primitive_normalized();
        let b = other.primitive_normalized();
        if a.is_zero() {
            return if b.is_zero() { Poly::zero() } else { b };
        }
        if b.is_zero() {
            return a;
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        // Main variable: earliest symbol present in either operand.
        let mut vars = a.symbols();
        for s in b.symbols() {
            if !vars.contains(&s) {
                vars.push(s);
            }
        }
        vars.sort();
        let x = vars[0];
        if a.degree_in(x) == 0 || b.degree_in(x) == 0 {
            // One operand is free of the main variable: gcd divides contents.
            let (ca, cb) = (content_wrt(&a, x), content_wrt(&b, x));
            return ca.gcd(&cb);
        }
        let (ca, pa) = content_primitive_wrt(&a, x);
        let (cb, pb) = content_primitive_wrt(&b, x);
        let cont_gcd = ca.gcd(&cb);
        let pp_gcd = primitive_prs_gcd(&pa, &pb, x);
        cont_gcd.mul(&pp_gcd).primitive_normalized()
    }
}

/// View of a polynomial as univariate in `x` with polynomial coefficients.
fn as_univariate(p: &Poly, x: SymbolId) -> BTreeMap<u32, Poly> {
    let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (e, rest) = m.split_symbol(x);
        out.entry(e)
            .or_insert_with(Poly::zero)
            .insert_add(rest, c.clone());
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn from_univariate(coeffs: &BTreeMap<u32, Poly>, x: SymbolId) -> Poly {
    let mut out = Poly::zero();
    for (&e, c) in coeffs {
        let xe = if e == 0 {
            Poly::one()
        } else {
            Poly::term(Monomial(vec![(x, e)]), BigRational::one())
        };
        out = out.add(&c.mul(&xe));
    }
    out
}

/// Content of `p` viewed as univariate in `x` (gcd of the coefficients).
fn content_wrt(p: &Poly, x: SymbolId) -> Poly {
    let uni = as_univariate(p, x);
    let mut content = Poly::zero();
    for c in uni.values() {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    content
}

fn content_primitive_wrt(p: &Poly, x: SymbolId) -> (Poly, Poly) {
    let content = content_wrt(p, x);
    let primitive = p
        .divexact(&content)
        .expect("content always divides exactly");
    (content, primitive)
}

/// Pseudo-remainder of `a` by `b` viewed as univariate in `x`.
fn pseudo_rem(a: &BTreeMap<u32, Poly>, b: &BTreeMap<u32, Poly>) -> BTreeMap<u32, Poly> {
    let deg_b = *b.keys().next_back().expect("divisor nonzero");
    let lc_b = b[&deg_b].clone();
    let mut r = a.clone();
    loop {
        let deg_r = match r.keys().next_back() {
            Some(&d) => d,
            None => return r,
        };
        if deg_r < deg_b {
            return r;
        }
        let lc_r = r[&deg_r].clone();
        // r <- lc_b * r - lc_r * x^(deg_r-deg_b) * b
        let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
        for (&e, c) in &r {
            if e == deg_r {
                continue;
            }
            next.insert(e, c.mul(&lc_b));
        }
        for (&e, c) in b {
            if e == deg_b {
                continue;
            }
            let shifted = e + (deg_r - deg_b);
            let sub = c.mul(&lc_r);
            let entry = next.entry(shifted).or_insert_with(Poly::zero);
            *entry = entry.sub(&sub);
        }
        next.retain(|_, v| !v.is_zero());
        r = next;
    }
}

/// Primitive polynomial remainder sequence; returns the gcd of two
/// `x`-primitive polynomials.
fn primitive_prs_gcd(pa: &Poly, pb: &Poly, x: SymbolId) -> Poly {
    let mut r0 = as_univariate(pa, x);
    let mut r1 = as_univariate(pb, x);
    if r0.keys().next_back() < r1.keys().next_back() {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let rem = pseudo_rem(&r0, &r1);
        if rem.is_empty() {
            let g = from_univariate(&r1, x);
            let (_, prim) = content_primitive_wrt(&g, x);
            return prim.primitive_normalized();
        }
        let rem_poly = from_univariate(&rem, x);
        if rem_poly.degree_in(x) == 0 {
            // Nontrivial constant-in-x remainder: primitive parts are coprime.
            return Poly::one();
        }
        let (_, prim) = content_primitive_wrt(&rem_poly, x);
        r0 = r1;
        r1 = as_univariate(&prim, x);
    }
}

/// Pretty-printer bound to a workspace for symbol names.
pub struct PolyDisplay<'a> {
    pub poly: &'a Poly,
    pub ws: &'a Workspace,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Leading term first.
        for (m, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            if !coeff_is_one || m.is_unit() {
                write!(f, "{}", format_ratio(&mag))?;
                if !m.is_unit() {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for &(s, e) in &m.0 {
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.ws.name(s))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Poly {
    pub fn display<'a>(&'a self, ws: &'a Workspace) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ws }
    }
}
