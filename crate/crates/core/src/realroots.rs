//! Exact real-root counting and isolation.
//!
//! Counting uses Sturm chains of the squarefree part; isolation bisects a
//! Cauchy-bounded interval with those counts. Every real algebraic number the
//! rest of the crate handles is an [`IsolatedRoot`]: an interval with rational
//! endpoints that contains exactly one root of its (squarefree) owner.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intpoly;
use crate::poly::{int, Polynomial, Rational};

/// A point of the extended real line with a rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::PosInf => f.write_str("+inf"),
        }
    }
}

/// Sturm chain of the squarefree part of a nonzero polynomial.
///
/// Members are kept as primitive integer polynomials; each is a positive
/// multiple of the classical remainder, so sign variations are unchanged.
#[derive(Clone, Debug)]
pub struct SturmChain {
    base: Polynomial,
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Result<Self> {
        Ok(Self::of_squarefree(p.squarefree_part()?))
    }

    fn of_squarefree(f: Polynomial) -> Self {
        let first = f.integer_coefficients();
        let mut next = intpoly::primitive(intpoly::derivative(&first));
        let mut chain = vec![first];
        while !next.is_empty() {
            let rem = intpoly::signed_prem(chain.last().expect("chain is never empty"), &next);
            chain.push(next);
            next = rem.into_iter().map(|c| -c).collect();
        }
        Self {
            base: Polynomial::from_integers(chain[0].clone()),
            chain,
        }
    }

    /// The squarefree polynomial whose roots this chain counts, primitive.
    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    fn variations(&self, x: &Extended) -> usize {
        let signs = self.chain.iter().map(|s| match x {
            Extended::NegInf => intpoly::sign_at_neg_infinity(s),
            Extended::Finite(v) => intpoly::sign_at(s.iter().rev(), v),
            Extended::PosInf => intpoly::sign_at_pos_infinity(s),
        });
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Extended, hi: &Extended) -> Result<usize> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        for end in [lo, hi] {
            if let Extended::Finite(x) = end {
                if self.base.sign_at(x) == Ordering::Equal {
                    return Err(Error::EndpointIsRoot(x.to_string()));
                }
            }
        }
        Ok(self.variations(lo) - self.variations(hi))
    }

    fn count_rational(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(&Extended::Finite(lo.clone()))
            - self.variations(&Extended::Finite(hi.clone()))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &Polynomial, lo: &Extended, hi: &Extended) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("sturm_count"));
    }
    SturmChain::new(p)?.count(lo, hi)
}

/// A real root pinned by an isolating interval.
///
/// When `lo == hi` the root is that rational point. Otherwise the open
/// interval `(lo, hi)` holds exactly one root of `owner`, and `owner` takes
/// nonzero values of opposite sign at the two endpoints.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    lo: Rational,
    hi: Rational,
    multiplicity: usize,
    owner: Arc<Polynomial>,
}

impl IsolatedRoot {
    /// Root of `owner` in the open interval `(lo, hi)`, or exactly at `lo`
    /// when `lo == hi`. The caller guarantees there is exactly one.
    pub fn from_interval(
        lo: Rational,
        hi: Rational,
        multiplicity: usize,
        owner: &Polynomial,
    ) -> Result<Self> {
        let sf = owner.squarefree_part()?;
        if lo > hi {
            return Err(Error::EmptyInterval);
        }
        if lo != hi {
            for x in [&lo, &hi] {
                if sf.sign_at(x) == Ordering::Equal {
                    return Err(Error::EndpointIsRoot(x.to_string()));
                }
            }
        }
        Ok(Self {
            lo,
            hi,
            multiplicity,
            owner: Arc::new(sf),
        })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Squarefree polynomial this root was isolated from.
    pub fn owner(&self) -> &Polynomial {
        &self.owner
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The root itself when it is rational and was hit exactly.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Halves the interval, collapsing to a point if the midpoint is the root.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let at_mid = self.owner.sign_at(&mid);
        if at_mid == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
        } else if self.owner.sign_at(&self.lo) != at_mid {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Same root with interval width at most `max_width`.
    pub fn refine(&self, max_width: &Rational) -> Self {
        let mut r = self.clone();
        while !r.is_exact() && &r.width() > max_width {
            r.bisect();
        }
        r
    }

    fn contains_root_of(&self, g: &Polynomial) -> bool {
        if g.is_constant() {
            return false;
        }
        match self.as_rational() {
            Some(x) => g.sign_at(x) == Ordering::Equal,
            None => {
                SturmChain::of_squarefree(g.squarefree_part().expect("g is nonzero"))
                    .count_rational(&self.lo, &self.hi)
                    > 0
            }
        }
    }

    /// Whether `q` vanishes at this root. Exact, via a common-factor test.
    pub fn is_root_of(&self, q: &Polynomial) -> bool {
        if q.is_zero() {
            return true;
        }
        let g = self.owner.gcd(q).expect("owner is nonzero");
        self.contains_root_of(&g)
    }

    /// Position of this root relative to a rational point.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(x);
        }
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let at_x = self.owner.sign_at(x);
        if at_x == Ordering::Equal {
            Ordering::Equal
        } else if self.owner.sign_at(&self.lo) != at_x {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl Serialize for IsolatedRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            lo: String,
            hi: String,
            multiplicity: usize,
        }
        View {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
            multiplicity: self.multiplicity,
        }
        .serialize(s)
    }
}

/// Real roots with and without multiplicity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub distinct: usize,
    pub with_multiplicity: usize,
}

/// Strict upper bound on the absolute value of every complex root.
fn cauchy_bound(f: &Polynomial) -> Rational {
    let lc = f.leading_coefficient().expect("nonzero").abs();
    let max = f
        .coefficients()
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    (max + Rational::one()).ceil() + Rational::one()
}

/// Every distinct real root of `p`, sorted, each with its multiplicity.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<IsolatedRoot>> {
    isolate_with_chain(p).map(|(roots, _)| roots)
}

/// [`isolate_real_roots`] plus the Sturm chain it built, when `p` is not constant.
pub(crate) fn isolate_with_chain(
    p: &Polynomial,
) -> Result<(Vec<IsolatedRoot>, Option<SturmChain>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("isolate_real_roots"));
    }
    // gcd tower p, gcd(p, p'), ...: a root has multiplicity m iff it is a
    // root of the first m members.
    let mut tower = vec![p.clone()];
    loop {
        let last = tower.last().expect("tower is never empty");
        let next = last.gcd(&last.derivative())?;
        if next.is_constant() {
            break;
        }
        tower.push(next);
    }
    let f = match tower.get(1) {
        Some(g) => p.exact_div(g)?,
        None => p.clone(),
    };
    if f.is_constant() {
        return Ok((Vec::new(), None));
    }
    let chain = SturmChain::of_squarefree(f);
    let owner = Arc::new(chain.base().clone());
    let bound = cauchy_bound(&owner);
    let lo = -bound.clone();
    let vlo = chain.variations(&Extended::Finite(lo.clone()));
    let vhi = chain.variations(&Extended::Finite(bound.clone()));

    let mut intervals = Vec::new();
    isolate_in(&chain, &owner, lo, bound, vlo, vhi, &mut intervals);

    let roots = intervals
        .into_iter()
        .map(|(a, b)| {
            let mut root = IsolatedRoot {
                lo: a,
                hi: b,
                multiplicity: 1,
                owner: Arc::clone(&owner),
            };
            root.multiplicity = 1 + tower[1..]
                .iter()
                .take_while(|g| root.contains_root_of(g))
                .count();
            root
        })
        .collect();
    Ok((roots, Some(chain)))
}

fn isolate_in(
    chain: &SturmChain,
    f: &Polynomial,
    a: Rational,
    b: Rational,
    va: usize,
    vb: usize,
    out: &mut Vec<(Rational, Rational)>,
) {
    match va - vb {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let mid = (&a + &b) / int(2);
            let vm = chain.variations(&Extended::Finite(mid.clone()));
            if f.sign_at(&mid) != Ordering::Equal {
                isolate_in(chain, f, a, mid.clone(), va, vm, out);
                isolate_in(chain, f, mid, b, vm, vb, out);
                return;
            }
            // With the zero entry skipped, the variation count at a root equals
            // the count just right of it; crossing the root loses exactly one.
            let (left, vl) = step_off(chain, f, &mid, &a, vm + 1);
            isolate_in(chain, f, a, left, va, vl, out);
            out.push((mid.clone(), mid.clone()));
            let (right, vr) = step_off(chain, f, &mid, &b, vm);
            isolate_in(chain, f, right, b, vr, vb, out);
        }
    }
}

/// A non-root point between the root `at` and `toward` with no other root
/// in between, together with its variation count (which must be `expect`).
fn step_off(
    chain: &SturmChain,
    f: &Polynomial,
    at: &Rational,
    toward: &Rational,
    expect: usize,
) -> (Rational, usize) {
    let mut delta = (toward - at) / int(2);
    loop {
        let x = at + &delta;
        if f.sign_at(&x) != Ordering::Equal {
            let v = chain.variations(&Extended::Finite(x.clone()));
            if v == expect {
                return (x, v);
            }
        }
        delta /= int(2);
    }
}

/// Real-root counts of `p`, distinct and with multiplicity.
pub fn count_real_roots(p: &Polynomial) -> Result<RootCount> {
    let roots = isolate_real_roots(p)?;
    Ok(RootCount {
        distinct: roots.len(),
        with_multiplicity: roots.iter().map(IsolatedRoot::multiplicity).sum(),
    })
}

/// Exact sign of `q` at the algebraic number pinned by `root`.
pub fn sign_at_root(q: &Polynomial, root: &IsolatedRoot) -> Ordering {
    RootSigns::new(q.clone()).at(root)
}

/// Signs of one polynomial at many algebraic numbers, sharing the Sturm
/// chain of `q` between queries.
#[derive(Clone, Debug)]
pub struct RootSigns {
    q: Polynomial,
    chain: Option<SturmChain>,
}

impl RootSigns {
    pub fn new(q: Polynomial) -> Self {
        let chain = (!q.is_constant()).then(|| SturmChain::new(&q).expect("q is nonzero"));
        Self { q, chain }
    }

    pub fn at(&self, root: &IsolatedRoot) -> Ordering {
        if let Some(x) = root.as_rational() {
            return self.q.sign_at(x);
        }
        let Some(chain) = &self.chain else {
            return self.q.sign_at_pos_infinity();
        };
        if root.contains_root_of(&root.owner.gcd(chain.base()).expect("owner is nonzero")) {
            return Ordering::Equal;
        }
        // q is nonzero at the root: shrink until q has no root on the closed interval.
        let mut r = root.clone();
        loop {
            if let Some(x) = r.as_rational() {
                return self.q.sign_at(x);
            }
            let at_lo = chain.base.sign_at(&r.lo);
            if at_lo != Ordering::Equal
                && chain.base.sign_at(&r.hi) != Ordering::Equal
                && chain.count_rational(&r.lo, &r.hi) == 0
            {
                return self.q.sign_at(&r.lo);
            }
            r.bisect();
        }
    }
}

/// Exact order of two real algebraic numbers; `Equal` means the same number.
pub fn compare_roots(a: &IsolatedRoot, b: &IsolatedRoot) -> Ordering {
    if let Some(x) = a.as_rational() {
        return b.cmp_rational(x).reverse();
    }
    if let Some(x) = b.as_rational() {
        return a.cmp_rational(x);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let common = a.owner.gcd(&b.owner).expect("owners are nonzero");
    let common_chain = (!common.is_constant()).then(|| SturmChain::of_squarefree(common));
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if let Some(chain) = &common_chain {
            // Overlap endpoints are endpoints of a or b, so they are not roots
            // of `common`; a common root inside is the root of both.
            let lo = (&a.lo).max(&b.lo).clone();
            let hi = (&a.hi).min(&b.hi).clone();
            if chain.count_rational(&lo, &hi) > 0 {
                return Ordering::Equal;
            }
        }
        a.bisect();
        b.bisect();
        if a.is_exact() || b.is_exact() {
            return compare_roots(&a, &b);
        }
    }
}

/// A position on the real axis shared by one or more tagged roots.
#[derive(Clone, Debug)]
pub struct MergedRoot<T> {
    pub root: IsolatedRoot,
    pub tags: Vec<T>,
}

/// Merges roots of several polynomials into one sorted sequence; identical
/// algebraic numbers collapse into one entry carrying every source tag.
pub fn order_roots<T>(roots: impl IntoIterator<Item = (T, IsolatedRoot)>) -> Vec<MergedRoot<T>> {
    let mut items: Vec<(T, IsolatedRoot)> = roots.into_iter().collect();
    items.sort_by(|x, y| compare_roots(&x.1, &y.1));
    let mut out: Vec<MergedRoot<T>> = Vec::new();
    for (tag, root) in items {
        match out.last_mut() {
            Some(last) if compare_roots(&last.root, &root) == Ordering::Equal => {
                last.tags.push(tag)
            }
            _ => out.push(MergedRoot {
                root,
                tags: vec![tag],
            }),
        }
    }
    out
}
