//! The defining set D_a = {x in F_q^* : Tr(x^{p^alpha+1}) = a}, the codewords
//! (Tr(b d_1) + c, ..., Tr(b d_n) + c), and the counts
//! N_b(a, rho) = #{x in F_q : Tr(x^{p^alpha+1}) = a, Tr(b x) = rho}.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::char_sums::{class_of, leg, LinearizedMap};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldParams, MdParity, PrimeResidue};
use crate::words::TraceWords;

/// The closed-form regime a (p, e, alpha, a, c) falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// a = 0, m/d odd.
    One,
    /// a != 0, m/d odd.
    Two,
    /// a = 0, m/d even.
    Three,
    /// a != 0, m/d even.
    Four,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::One => 1,
            Theorem::Two => 2,
            Theorem::Three => 3,
            Theorem::Four => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Theorem::One),
            2 => Some(Theorem::Two),
            3 => Some(Theorem::Three),
            4 => Some(Theorem::Four),
            _ => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for Theorem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Theorem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Theorem::from_number(n).ok_or_else(|| serde::de::Error::custom(format!("no theorem {n}")))
    }
}

/// A field together with the trace value a of the defining set and the
/// codeword offset c.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    field: Arc<Field>,
    a: PrimeResidue,
    c: PrimeResidue,
}

impl CodeSpec {
    pub fn new(field: Arc<Field>, a: u32, c: u32) -> Result<Self> {
        let p = field.p();
        if a >= p {
            return Err(Error::param("a must lie in [0, p-1]"));
        }
        if c >= p {
            return Err(Error::param("c must lie in [0, p-1]"));
        }
        Ok(CodeSpec { field, a: PrimeResidue::new(a as i64, p), c: PrimeResidue::new(c as i64, p) })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shared_field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn params(&self) -> &FieldParams {
        self.field.params()
    }

    pub fn a(&self) -> PrimeResidue {
        self.a
    }

    pub fn c(&self) -> PrimeResidue {
        self.c
    }

    pub fn theorem(&self) -> Result<Theorem> {
        if self.c.is_zero() {
            return Err(Error::NoApplicableTheorem("c = 0 is outside the four theorems".into()));
        }
        let parity = self
            .params()
            .md_parity()
            .ok_or_else(|| Error::NoApplicableTheorem("d = gcd(alpha, e) does not divide m".into()))?;
        Ok(match (self.a.is_zero(), parity) {
            (true, MdParity::Odd) => Theorem::One,
            (false, MdParity::Odd) => Theorem::Two,
            (true, MdParity::Even) => Theorem::Three,
            (false, MdParity::Even) => Theorem::Four,
        })
    }
}

/// The elements d_1 < d_2 < ... of D_a in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    a: PrimeResidue,
    elements: Vec<FieldElement>,
}

impl DefiningSet {
    pub fn a(&self) -> PrimeResidue {
        self.a
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn trace_class_members(field: &Field, a: PrimeResidue, include_zero: bool) -> Vec<FieldElement> {
    field
        .elements()
        .skip(usize::from(!include_zero))
        .filter(|x| field.trace(&field.power_map(x)) == a)
        .collect()
}

/// D_a; zero is never a member.
pub fn defining_set(spec: &CodeSpec) -> Result<DefiningSet> {
    let elements = trace_class_members(spec.field(), spec.a, false);
    if elements.is_empty() {
        return Err(Error::DegenerateCode);
    }
    Ok(DefiningSet { a: spec.a, elements })
}

/// n_a = #{x in F_q : Tr(x^{p^alpha+1}) = a}, counting x = 0 when a = 0.
pub fn n_a_closed(params: &FieldParams, a: PrimeResidue) -> Result<u64> {
    let parity = params
        .md_parity()
        .ok_or_else(|| Error::NoClosedForm("n_a needs d = gcd(alpha, e) to divide m".into()))?;
    let p = params.p() as u64;
    let e = params.e();
    let m = params.m();
    let shift = match parity {
        MdParity::Odd => m - 1,
        MdParity::Even => m + params.d() - 1,
    };
    let big = p.pow(e - 1);
    let small = p.pow(shift);
    Ok(if a.is_zero() { big - (p - 1) * small } else { big + small })
}

/// A codeword as its symbol vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codeword {
    pub symbols: Vec<PrimeResidue>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.symbols.iter().filter(|s| !s.is_zero()).count() as u64
    }
}

/// Symbol counts (t_0, ..., t_{p-1}) of a codeword.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u64>);

impl Composition {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Hamming weight n - t_0.
    pub fn weight(&self) -> u64 {
        self.length() - self.0[0]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

pub fn composition_of(p: u32, w: &Codeword) -> Composition {
    let mut counts = vec![0u64; p as usize];
    for s in &w.symbols {
        counts[s.value() as usize] += 1;
    }
    Composition(counts)
}

/// The code of a spec: its defining set and codeword map.
#[derive(Debug, Clone)]
pub struct Code {
    spec: CodeSpec,
    set: DefiningSet,
}

impl Code {
    pub fn new(spec: CodeSpec) -> Result<Self> {
        let set = defining_set(&spec)?;
        Ok(Code { spec, set })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn codeword(&self, b: &FieldElement) -> Codeword {
        let field = self.spec.field();
        let c = self.spec.c.value() as i64;
        let symbols = self
            .set
            .elements
            .iter()
            .map(|d| field.residue(field.trace(&field.mul(b, d)).value() as i64 + c))
            .collect();
        Codeword { symbols }
    }

    /// Words over the defining set with the offset c, for bulk enumeration.
    pub(crate) fn trace_words(&self) -> TraceWords {
        let offsets = vec![self.spec.c.value(); self.set.len()];
        TraceWords::new(self.spec.field(), &self.set.elements, &offsets)
    }
}

/// N_b(a, rho) for all rho at once, by enumeration over F_q (zero included).
pub fn n_b_histogram(spec: &CodeSpec, b: &FieldElement) -> Vec<u64> {
    let field = spec.field();
    let mut counts = vec![0u64; field.p() as usize];
    for x in field.elements() {
        if field.trace(&field.power_map(&x)) == spec.a {
            counts[field.trace(&field.mul(b, &x)).value() as usize] += 1;
        }
    }
    counts
}

pub fn n_b_count_brute(spec: &CodeSpec, b: &FieldElement, rho: PrimeResidue) -> u64 {
    n_b_histogram(spec, b)[rho.value() as usize]
}

/// N_b(a, rho) for every b, indexed by the lexicographic index of b.
pub fn n_b_table(spec: &CodeSpec) -> Vec<Vec<u64>> {
    let field = spec.field();
    let points = trace_class_members(field, spec.a, true);
    let words = TraceWords::new(field, &points, &vec![0; points.len()]);
    let mut out = Vec::with_capacity(field.q() as usize);
    words.for_each_histogram(0..field.q(), |_, h| out.push(h.to_vec()));
    out
}

/// Precomputed data for evaluating N_b(a, rho) in closed form when m/d is
/// even and a != 0.
pub struct NbClosed<'f> {
    field: &'f Field,
    map: LinearizedMap<'f>,
    a: i64,
    n_a: u64,
    /// p^{e-2}, p^{m+d-2}, p^{m+d-1}
    base: i64,
    low: i64,
    high: i64,
}

impl<'f> NbClosed<'f> {
    pub fn new(spec: &'f CodeSpec) -> Result<Self> {
        let params = spec.params();
        if params.md_parity() != Some(MdParity::Even) {
            return Err(Error::NoClosedForm("N_b(a, rho) has no closed form here unless m/d is even; use brute".into()));
        }
        if spec.a.is_zero() {
            return Err(Error::NoClosedForm("N_b(a, rho) closed form needs a != 0".into()));
        }
        let field = spec.field();
        let p = params.p() as i64;
        let (e, m, d) = (params.e(), params.m(), params.d());
        Ok(NbClosed {
            field,
            map: LinearizedMap::unit(field),
            a: spec.a.value() as i64,
            n_a: n_a_closed(params, spec.a)?,
            base: p.pow(e - 2),
            low: p.pow(m + d - 2),
            high: p.pow(m + d - 1),
        })
    }

    pub fn count(&self, b: &FieldElement, rho: PrimeResidue) -> Result<u64> {
        let p = self.field.p();
        if b.is_zero() {
            // every x has Tr(0 x) = 0
            return Ok(if rho.is_zero() { self.n_a } else { 0 });
        }
        let value = match class_of(self.field, &self.map, b)? {
            None => self.base + self.low,
            Some(tau) => {
                let tau = tau.value() as i64;
                let r = rho.value() as i64;
                match (r == 0, tau == 0) {
                    (true, true) => self.base + self.high,
                    (true, false) => self.base - self.high * leg(-self.a * tau, p),
                    (false, true) => self.base,
                    // L(rho^2 - 4 a tau) vanishes when tau = rho^2/(4a)
                    (false, false) => self.base - self.high * leg(r * r - 4 * self.a * tau, p),
                }
            }
        };
        u64::try_from(value).map_err(|_| Error::Internal(format!("negative count {value}")))
    }
}

pub fn n_b_count_closed(spec: &CodeSpec, b: &FieldElement, rho: PrimeResidue) -> Result<u64> {
    NbClosed::new(spec)?.count(b, rho)
}

/// Classification of every b by whether X^{p^{2 alpha}} + X = -b^{p^alpha}
/// is solvable, and if so by Tr(gamma^{p^alpha+1}) for its solutions gamma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub unsolvable: u64,
    /// `classes[t]` counts the b whose solutions have trace class t.
    pub classes: Vec<u64>,
}

impl Census {
    pub fn solvable(&self) -> u64 {
        self.classes.iter().sum()
    }
}

impl Serialize for Census {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.classes.len() + 1))?;
        map.serialize_entry("unsolvable", &self.unsolvable)?;
        for (t, n) in self.classes.iter().enumerate() {
            map.serialize_entry(&t.to_string(), n)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Census {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = indexmap::IndexMap::<String, u64>::deserialize(d)?;
        let mut unsolvable = None;
        let mut classes = vec![None; raw.len().saturating_sub(1)];
        for (k, v) in raw {
            if k == "unsolvable" {
                unsolvable = Some(v);
                continue;
            }
            let slot = k
                .parse::<usize>()
                .ok()
                .and_then(|t| classes.get_mut(t))
                .ok_or_else(|| serde::de::Error::custom(format!("unexpected census key {k}")))?;
            *slot = Some(v);
        }
        let unsolvable = unsolvable.ok_or_else(|| serde::de::Error::custom("census lacks \"unsolvable\""))?;
        let classes = classes
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| serde::de::Error::custom("census has a gap in its class keys"))?;
        Ok(Census { unsolvable, classes })
    }
}

/// Visits every b and checks that all solutions share one trace class.
pub fn solvable_b_census(field: &Field) -> Result<Census> {
    let map = LinearizedMap::unit(field);
    let mut census = Census { unsolvable: 0, classes: vec![0; field.p() as usize] };
    for b in field.elements() {
        match class_of(field, &map, &b)? {
            None => census.unsolvable += 1,
            Some(t) => census.classes[t.value() as usize] += 1,
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, e: u32, alpha: u32, a: u32, c: u32) -> CodeSpec {
        CodeSpec::new(Arc::new(Field::build(p, e, alpha).unwrap()), a, c).unwrap()
    }

    #[test]
    fn theorem_regimes() {
        assert_eq!(spec(3, 6, 1, 0, 1).theorem().unwrap(), Theorem::One);
        assert_eq!(spec(3, 6, 1, 2, 1).theorem().unwrap(), Theorem::Two);
        assert_eq!(spec(3, 4, 1, 0, 2).theorem().unwrap(), Theorem::Three);
        assert_eq!(spec(3, 4, 1, 1, 1).theorem().unwrap(), Theorem::Four);
        assert!(matches!(spec(3, 4, 1, 1, 0).theorem(), Err(Error::NoApplicableTheorem(_))));
        // d = 2 does not divide m = 1
        assert!(matches!(spec(3, 2, 2, 1, 1).theorem(), Err(Error::NoApplicableTheorem(_))));
        assert!(CodeSpec::new(Arc::new(Field::build(3, 2, 1).unwrap()), 3, 1).is_err());
    }

    #[test]
    fn defining_set_sizes() {
        let s = spec(3, 6, 1, 0, 1);
        assert_eq!(defining_set(&s).unwrap().len(), 224);
        assert_eq!(n_a_closed(s.params(), s.a()).unwrap(), 225);
        let s = spec(3, 4, 1, 1, 1);
        assert_eq!(defining_set(&s).unwrap().len(), 36);
        assert_eq!(n_a_closed(s.params(), s.a()).unwrap(), 36);
        assert_eq!(n_a_closed(s.params(), PrimeResidue::zero()).unwrap(), 9);
        assert_eq!(defining_set(&spec(3, 2, 1, 0, 1)), Err(Error::DegenerateCode));
    }

    #[test]
    fn lengths_partition_the_field() {
        for (p, e, alpha) in [(3, 4, 1), (3, 6, 1), (5, 4, 1), (3, 8, 2), (3, 6, 3)] {
            let field = Field::build(p, e, alpha).unwrap();
            let params = field.params();
            let n0 = n_a_closed(params, PrimeResidue::zero()).unwrap();
            let na = n_a_closed(params, PrimeResidue::new(1, p)).unwrap();
            assert_eq!(n0 + (p as u64 - 1) * na, field.q());
            let shared = Arc::new(field);
            for a in 0..p {
                let s = CodeSpec::new(shared.clone(), a, 1).unwrap();
                let expected = n_a_closed(s.params(), s.a()).unwrap() - u64::from(a == 0);
                let set = defining_set(&s).unwrap();
                assert_eq!(set.len() as u64, expected);
                for d in set.elements() {
                    assert_eq!(shared.trace(&shared.power_map(d)), s.a());
                }
            }
        }
    }

    #[test]
    fn codewords_and_compositions() {
        let s = spec(3, 4, 1, 1, 1);
        let code = Code::new(s.clone()).unwrap();
        let field = s.field();
        let zero_word = code.codeword(&field.zero());
        assert_eq!(composition_of(3, &zero_word), Composition(vec![0, 36, 0]));
        let mut balanced = 0;
        for b in field.elements() {
            let w = code.codeword(&b);
            let comp = composition_of(3, &w);
            assert_eq!(comp.length(), 36);
            assert_eq!(comp.weight(), w.weight());
            if comp == Composition(vec![12, 12, 12]) {
                balanced += 1;
            }
        }
        assert_eq!(balanced, 72);
    }

    #[test]
    fn unsolvable_b_count_for_small_case() {
        let s = spec(3, 4, 1, 1, 1);
        let field = s.field();
        let map = LinearizedMap::unit(field);
        let b = field
            .elements()
            .find(|b| class_of(field, &map, b).unwrap().is_none())
            .unwrap();
        assert_eq!(n_b_count_brute(&s, &b, PrimeResidue::zero()), 12);
        assert_eq!(n_b_count_closed(&s, &b, PrimeResidue::zero()).unwrap(), 12);
    }

    #[test]
    fn closed_counts_match_enumeration() {
        for (p, e, alpha) in [(3, 4, 1), (5, 4, 1), (3, 4, 3), (7, 4, 1)] {
            let field = Arc::new(Field::build(p, e, alpha).unwrap());
            for a in 1..p {
                let s = CodeSpec::new(field.clone(), a, 1).unwrap();
                let closed = NbClosed::new(&s).unwrap();
                let table = n_b_table(&s);
                for (i, row) in table.iter().enumerate() {
                    let b = field.element_at(i as u64);
                    for rho in 0..p {
                        let r = PrimeResidue::new(rho as i64, p);
                        assert_eq!(closed.count(&b, r).unwrap(), row[rho as usize], "{p} {e} {alpha} a={a} b={b} rho={rho}");
                    }
                }
            }
        }
    }

    #[test]
    fn table_matches_direct_counts() {
        let s = spec(3, 4, 1, 2, 1);
        let table = n_b_table(&s);
        for (i, row) in table.iter().enumerate().step_by(7) {
            assert_eq!(*row, n_b_histogram(&s, &s.field().element_at(i as u64)));
        }
    }

    #[test]
    fn weight_identity() {
        for (p, e, alpha, a, c) in [(3, 4, 1, 1, 1), (3, 4, 1, 0, 2), (5, 4, 1, 3, 2), (3, 6, 1, 0, 1), (3, 6, 1, 2, 1)] {
            let s = spec(p, e, alpha, a, c);
            let code = Code::new(s.clone()).unwrap();
            let table = n_b_table(&s);
            let rho = PrimeResidue::new(-(c as i64), p);
            for (i, row) in table.iter().enumerate() {
                let b = s.field().element_at(i as u64);
                // c != 0, so x = 0 never lands in N_b(a, -c)
                assert_eq!(code.codeword(&b).weight(), code.len() as u64 - row[rho.value() as usize]);
            }
        }
    }

    #[test]
    fn closed_counts_reject_other_regimes() {
        assert!(matches!(NbClosed::new(&spec(3, 6, 1, 1, 1)), Err(Error::NoClosedForm(_))));
        assert!(matches!(NbClosed::new(&spec(3, 4, 1, 0, 1)), Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn census_examples() {
        let f81 = Field::build(3, 4, 1).unwrap();
        assert_eq!(solvable_b_census(&f81).unwrap(), Census { unsolvable: 72, classes: vec![1, 4, 4] });
        let f729 = Field::build(3, 6, 1).unwrap();
        assert_eq!(solvable_b_census(&f729).unwrap(), Census { unsolvable: 0, classes: vec![225, 252, 252] });
    }

    #[test]
    fn census_json_shape() {
        let census = Census { unsolvable: 72, classes: vec![1, 4, 4] };
        let json = serde_json::to_string(&census).unwrap();
        assert_eq!(json, r#"{"unsolvable":72,"0":1,"1":4,"2":4}"#);
        assert_eq!(serde_json::from_str::<Census>(&json).unwrap(), census);
    }
}
