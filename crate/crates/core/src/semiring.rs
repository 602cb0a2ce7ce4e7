//! Finite semirings given by explicit operation tables.
//!
//! Elements are dense indices `0..size`. Every set of elements handed out by
//! this module is a [`FixedBitSet`] over those indices.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a semiring element.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    zero: Elem,
    one: Option<Elem>,
    names: Vec<String>,
}

impl FiniteSemiring {
    /// Builds a semiring from row-major `size × size` tables.
    ///
    /// Only structural well-formedness is checked here (table shapes, indices
    /// in range, distinct names). Use [`FiniteSemiring::check_axioms`] for the
    /// algebraic laws.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Option<Elem>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Malformed("carrier must be nonempty".into()));
        }
        for (label, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != size * size {
                return Err(Error::Malformed(format!(
                    "{label} table has {} entries, expected {}",
                    table.len(),
                    size * size
                )));
            }
            if let Some(pos) = table.iter().position(|&x| x >= size) {
                return Err(Error::Malformed(format!(
                    "{label}[{}][{}] = {} is not an element index",
                    pos / size,
                    pos % size,
                    table[pos]
                )));
            }
        }
        if zero >= size {
            return Err(Error::Malformed(format!("zero {zero} out of range")));
        }
        if let Some(one) = one {
            if one >= size {
                return Err(Error::Malformed(format!("one {one} out of range")));
            }
        }
        let names = names.unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
        if names.len() != size {
            return Err(Error::Malformed(format!(
                "{} names for {size} elements",
                names.len()
            )));
        }
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate element name `{}`", w[0])));
        }
        if let Some(bad) = names
            .iter()
            .find(|s| s.is_empty() || s.contains(char::is_whitespace) || s.contains(';'))
        {
            return Err(Error::Malformed(format!("element name `{bad}` is not a single token")));
        }
        Ok(FiniteSemiring {
            name: name.into(),
            size,
            add,
            mul,
            zero,
            one,
            names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.zero
    }

    /// `an(x) = { y : x·y = 0 }`.
    pub fn annihilator(&self, x: Elem) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        for y in self.elements() {
            if self.is_zero(self.mul(x, y)) {
                set.insert(y);
            }
        }
        set
    }

    /// `Z(S)`: elements `x` with `x·y = 0` or `y·x = 0` for some nonzero `y`.
    pub fn zero_divisor_set(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        for x in self.elements() {
            let divides = self.elements().any(|y| {
                !self.is_zero(y) && (self.is_zero(self.mul(x, y)) || self.is_zero(self.mul(y, x)))
            });
            if divides {
                set.insert(x);
            }
        }
        set
    }

    pub fn is_zero_divisor(&self, x: Elem) -> bool {
        self.elements().any(|y| {
            !self.is_zero(y) && (self.is_zero(self.mul(x, y)) || self.is_zero(self.mul(y, x)))
        })
    }

    /// Formats a set of elements as `{a,b,...}` using element names.
    pub fn format_set(&self, set: &FixedBitSet) -> String {
        let names: Vec<&str> = set.ones().map(|x| self.name_of(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Exhaustively checks every semiring law, plus commutativity,
    /// antinegativity and the declared identity.
    pub fn check_axioms(&self) -> AxiomReport {
        let m = self.size;
        let z = self.zero;
        let mut report = AxiomReport::default();

        // Additive monoid: identity, then commutativity, then associativity.
        let additive = (0..m)
            .find(|&x| self.add(z, x) != x || self.add(x, z) != x)
            .map(|x| Witness(vec![x]))
            .or_else(|| first_pair(m, |a, b| self.add(a, b) != self.add(b, a)))
            .or_else(|| {
                first_triple(m, |a, b, c| {
                    self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                })
            });
        report.set(Axiom::AdditiveMonoid, additive);

        report.set(
            Axiom::MultiplicativeSemigroup,
            first_triple(m, |a, b, c| {
                self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
            }),
        );
        report.set(
            Axiom::LeftDistributive,
            first_triple(m, |a, b, c| {
                self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
            }),
        );
        report.set(
            Axiom::RightDistributive,
            first_triple(m, |a, b, c| {
                self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c))
            }),
        );

        // Lexicographic order on pairs puts every (0,x) before any (x,0) with x > 0.
        let annihilates = (0..m)
            .find(|&x| self.mul(z, x) != z)
            .map(|x| Witness(vec![z, x]))
            .or_else(|| (0..m).find(|&x| self.mul(x, z) != z).map(|x| Witness(vec![x, z])));
        report.set(Axiom::ZeroAnnihilates, annihilates);

        report.set(
            Axiom::Commutative,
            first_pair(m, |a, b| self.mul(a, b) != self.mul(b, a)),
        );
        report.set(
            Axiom::Antinegative,
            first_pair(m, |a, b| a != z && b != z && self.add(a, b) == z),
        );

        let identity = match self.one {
            None => Some(Witness(Vec::new())),
            Some(one) => (0..m)
                .find(|&x| self.mul(one, x) != x || self.mul(x, one) != x)
                .map(|x| Witness(vec![x])),
        };
        report.set(Axiom::Identity, identity);
        report
    }

    /// Fails with [`Error::Axiom`] unless this is a commutative antiring
    /// (identity optional).
    pub fn require_commutative_antiring(&self) -> Result<()> {
        let report = self.check_axioms();
        let failed = report
            .failures()
            .map(|(axiom, _)| axiom)
            .find(|&axiom| axiom != Axiom::Identity);
        match failed {
            Some(axiom) => Err(Error::Axiom { axiom: axiom.key() }),
            None => Ok(()),
        }
    }

    /// Fails with [`Error::Axiom`] unless this is a commutative antiring with identity.
    pub fn require_commutative_antiring_with_identity(&self) -> Result<()> {
        let report = self.check_axioms();
        let failed = report.failures().map(|(axiom, _)| axiom).next();
        match failed {
            Some(axiom) => Err(Error::Axiom { axiom: axiom.key() }),
            None => Ok(()),
        }
    }

    /// The subsemiring `e·S = { e·s : s ∈ S }`.
    ///
    /// Carrier elements keep their names from `self`; `one` is `e·1` when that
    /// element is a two-sided identity on the carrier.
    pub fn scale_subsemiring(&self, e: Elem) -> Result<Subsemiring> {
        if e >= self.size {
            return Err(Error::OutOfRange {
                index: e,
                bound: self.size,
            });
        }
        let mut carrier: Vec<Elem> = self.elements().map(|s| self.mul(e, s)).collect();
        carrier.sort_unstable();
        carrier.dedup();

        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in carrier.iter().enumerate() {
            local[x] = i;
        }
        let k = carrier.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &carrier {
            for &b in &carrier {
                let (s, p) = (local[self.add(a, b)], local[self.mul(a, b)]);
                if s == usize::MAX || p == usize::MAX {
                    return Err(Error::Malformed(format!(
                        "{}·S is not closed under the operations",
                        self.name_of(e)
                    )));
                }
                add.push(s);
                mul.push(p);
            }
        }
        let zero = local[self.zero];
        if zero == usize::MAX {
            return Err(Error::Malformed(format!(
                "{}·0 is not zero",
                self.name_of(e)
            )));
        }
        let one = self.one.map(|one| self.mul(e, one)).and_then(|u| {
            let acts = carrier
                .iter()
                .all(|&x| self.mul(u, x) == x && self.mul(x, u) == x);
            acts.then_some(local[u])
        });
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        let semiring = FiniteSemiring::new(
            format!("{}*({})", self.name_of(e), self.name),
            k,
            add,
            mul,
            zero,
            one,
            Some(names),
        )?;
        Ok(Subsemiring { semiring, carrier })
    }

    /// Writes the line-oriented table format read by [`FiniteSemiring::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("semiring {}\n", self.name.replace(char::is_whitespace, "_")));
        out.push_str(&format!("order {}\n", self.size));
        out.push_str(&format!("zero {}\n", self.zero));
        match self.one {
            Some(one) => out.push_str(&format!("one {one}\n")),
            None => out.push_str("one none\n"),
        }
        for (label, table) in [("add", &self.add), ("mul", &self.mul)] {
            out.push_str(label);
            out.push('\n');
            for row in table.chunks(self.size) {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Parses the table format:
    ///
    /// ```text
    /// semiring <name>
    /// order <m>
    /// zero <index>
    /// one <index>|none
    /// add
    /// <m rows of m indices>
    /// mul
    /// <m rows of m indices>
    /// ```
    ///
    /// Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let last_line = text.lines().count().max(1);

        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: last_line,
                message: format!("unexpected end of input, expected {what}"),
            })
        };

        let (ln, line) = next("`semiring <name>`")?;
        let name = keyword_value(ln, line, "semiring")?.to_string();
        let (ln, line) = next("`order <m>`")?;
        let order: usize = parse_index(ln, keyword_value(ln, line, "order")?)?;
        if order == 0 {
            return Err(Error::Parse {
                line: ln,
                message: "order must be positive".into(),
            });
        }
        let (ln, line) = next("`zero <index>`")?;
        let zero = parse_index(ln, keyword_value(ln, line, "zero")?)?;
        let (ln, line) = next("`one <index>` or `one none`")?;
        let one = match keyword_value(ln, line, "one")? {
            "none" => None,
            v => Some(parse_index(ln, v)?),
        };

        let mut tables = Vec::with_capacity(2);
        for label in ["add", "mul"] {
            let (ln, line) = next(label)?;
            if line != label {
                return Err(Error::Parse {
                    line: ln,
                    message: format!("expected `{label}`, found `{line}`"),
                });
            }
            let mut table = Vec::with_capacity(order * order);
            for _ in 0..order {
                let (ln, line) = next("a table row")?;
                let row: Vec<usize> = line
                    .split_whitespace()
                    .map(|tok| parse_index(ln, tok))
                    .collect::<Result<_>>()?;
                if row.len() != order {
                    return Err(Error::Parse {
                        line: ln,
                        message: format!("row has {} entries, expected {order}", row.len()),
                    });
                }
                if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                    return Err(Error::Parse {
                        line: ln,
                        message: format!("entry {bad} is not below the order {order}"),
                    });
                }
                table.extend(row);
            }
            tables.push(table);
        }
        if let Some((ln, line)) = lines.next() {
            return Err(Error::Parse {
                line: ln,
                message: format!("trailing content `{line}`"),
            });
        }
        let mul = tables.pop().expect("two tables");
        let add = tables.pop().expect("two tables");
        FiniteSemiring::new(name, order, add, mul, zero, one, None)
    }
}

fn keyword_value<'a>(line_no: usize, line: &'a str, keyword: &str) -> Result<&'a str> {
    let mut parts = line.splitn(2, char::is_whitespace);
    match (parts.next(), parts.next()) {
        (Some(k), Some(v)) if k == keyword && !v.trim().is_empty() => Ok(v.trim()),
        _ => Err(Error::Parse {
            line: line_no,
            message: format!("expected `{keyword} <value>`, found `{line}`"),
        }),
    }
}

fn parse_index(line_no: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("`{tok}` is not a nonnegative integer"),
    })
}

fn first_pair(m: usize, mut bad: impl FnMut(Elem, Elem) -> bool) -> Option<Witness> {
    for a in 0..m {
        for b in 0..m {
            if bad(a, b) {
                return Some(Witness(vec![a, b]));
            }
        }
    }
    None
}

fn first_triple(m: usize, mut bad: impl FnMut(Elem, Elem, Elem) -> bool) -> Option<Witness> {
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if bad(a, b, c) {
                    return Some(Witness(vec![a, b, c]));
                }
            }
        }
    }
    None
}

impl FromStr for FiniteSemiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// `e·S` together with the embedding of its carrier into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsemiring {
    pub semiring: FiniteSemiring,
    /// `carrier[i]` is the parent index of local element `i`, ascending.
    pub carrier: Vec<Elem>,
}

impl Subsemiring {
    /// Parent index to local index.
    pub fn local(&self, parent: Elem) -> Option<Elem> {
        self.carrier.binary_search(&parent).ok()
    }

    pub fn contains(&self, parent: Elem) -> bool {
        self.local(parent).is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    AdditiveMonoid,
    MultiplicativeSemigroup,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
    Commutative,
    Antinegative,
    Identity,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::AdditiveMonoid,
        Axiom::MultiplicativeSemigroup,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
        Axiom::ZeroAnnihilates,
        Axiom::Commutative,
        Axiom::Antinegative,
        Axiom::Identity,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Axiom::AdditiveMonoid => "additive_monoid",
            Axiom::MultiplicativeSemigroup => "multiplicative_semigroup",
            Axiom::LeftDistributive => "left_distributivity",
            Axiom::RightDistributive => "right_distributivity",
            Axiom::ZeroAnnihilates => "zero_annihilates",
            Axiom::Commutative => "commutativity",
            Axiom::Antinegative => "antinegativity",
            Axiom::Identity => "identity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Elements witnessing an axiom violation. Empty only for a missing identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<Elem>);

impl Witness {
    pub fn display(&self, s: &FiniteSemiring) -> String {
        if self.0.is_empty() {
            return "(no identity declared)".to_string();
        }
        let names: Vec<&str> = self.0.iter().map(|&x| s.name_of(x)).collect();
        format!("({})", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    violations: [Option<Witness>; 8],
}

impl AxiomReport {
    fn set(&mut self, axiom: Axiom, witness: Option<Witness>) {
        self.violations[axiom as usize] = witness;
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.violations[axiom as usize].is_none()
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&Witness> {
        self.violations[axiom as usize].as_ref()
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, &Witness)> {
        Axiom::ALL
            .into_iter()
            .filter_map(|a| self.witness(a).map(|w| (a, w)))
    }

    pub fn all_hold(&self) -> bool {
        self.violations.iter().all(Option::is_none)
    }

    /// One `<axiom> OK` or `<axiom> FAIL <witness>` line per axiom.
    pub fn render(&self, s: &FiniteSemiring) -> String {
        let mut out = String::new();
        for axiom in Axiom::ALL {
            match self.witness(axiom) {
                None => out.push_str(&format!("{axiom} OK\n")),
                Some(w) => out.push_str(&format!("{axiom} FAIL {}\n", w.display(s))),
            }
        }
        out
    }
}

/// Built-in families: `bool`, `chain<k>`, and left-associative products `a x b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Boolean,
    Chain(usize),
    Product(Box<Builtin>, Box<Builtin>),
}

impl Builtin {
    pub fn product(left: Builtin, right: Builtin) -> Builtin {
        Builtin::Product(Box::new(left), Box::new(right))
    }

    pub fn build(&self) -> Result<FiniteSemiring> {
        let mut s = self.build_unnamed()?;
        s.name = self.to_string();
        Ok(s)
    }

    fn build_unnamed(&self) -> Result<FiniteSemiring> {
        match self {
            Builtin::Boolean => chain(2),
            Builtin::Chain(k) => chain(*k),
            Builtin::Product(l, r) => Ok(product(&l.build_unnamed()?, &r.build_unnamed()?)),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Boolean => f.write_str("bool"),
            Builtin::Chain(k) => write!(f, "chain{k}"),
            Builtin::Product(l, r) => match **r {
                Builtin::Product(..) => write!(f, "{l} x ({r})"),
                _ => write!(f, "{l} x {r}"),
            },
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Descriptor {
            descriptor: s.to_string(),
            reason: reason.to_string(),
        };
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(err("empty descriptor"));
        }
        let atom = |tok: &str| -> Result<Builtin> {
            let tok = tok.trim_matches(|c| c == '(' || c == ')');
            if tok == "bool" {
                return Ok(Builtin::Boolean);
            }
            if let Some(k) = tok.strip_prefix("chain") {
                let k = k
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<usize>()
                    .map_err(|_| err(&format!("`{tok}` needs a numeric length")))?;
                if k < 2 {
                    return Err(err("chain length must be at least 2"));
                }
                return Ok(Builtin::Chain(k));
            }
            Err(err(&format!("unknown semiring `{tok}`")))
        };
        let mut acc = atom(tokens[0])?;
        let mut rest = tokens[1..].iter();
        while let Some(&op) = rest.next() {
            if op != "x" && op != "×" {
                return Err(err(&format!("expected `x`, found `{op}`")));
            }
            let rhs = rest.next().ok_or_else(|| err("dangling `x`"))?;
            acc = Builtin::product(acc, atom(rhs)?);
        }
        Ok(acc)
    }
}

/// The chain `0 < a < b < … < 1` with `+ = max` and `· = min`.
fn chain(k: usize) -> Result<FiniteSemiring> {
    if k < 2 {
        return Err(Error::Descriptor {
            descriptor: format!("chain{k}"),
            reason: "chain length must be at least 2".into(),
        });
    }
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            add.push(a.max(b));
            mul.push(a.min(b));
        }
    }
    let names = (0..k)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == k - 1 {
                "1".to_string()
            } else if i <= 26 {
                char::from(b'a' + (i - 1) as u8).to_string()
            } else {
                format!("c{i}")
            }
        })
        .collect();
    FiniteSemiring::new(format!("chain{k}"), k, add, mul, 0, Some(k - 1), Some(names))
}

/// Componentwise direct product; element `(a, b)` has index `a·|R| + b`.
pub fn product(left: &FiniteSemiring, right: &FiniteSemiring) -> FiniteSemiring {
    let (m1, m2) = (left.size, right.size);
    let m = m1 * m2;
    let pair = |x: Elem| (x / m2, x % m2);
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for x in 0..m {
        let (a, b) = pair(x);
        for y in 0..m {
            let (c, d) = pair(y);
            add.push(left.add(a, c) * m2 + right.add(b, d));
            mul.push(left.mul(a, c) * m2 + right.mul(b, d));
        }
    }
    let names = (0..m)
        .map(|x| {
            let (a, b) = pair(x);
            format!("({},{})", left.names[a], right.names[b])
        })
        .collect();
    let one = left.one.zip(right.one).map(|(a, b)| a * m2 + b);
    FiniteSemiring::new(
        format!("{} x {}", left.name, right.name),
        m,
        add,
        mul,
        left.zero * m2 + right.zero,
        one,
        Some(names),
    )
    .expect("product of well-formed semirings is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(desc: &str) -> FiniteSemiring {
        desc.parse::<Builtin>().unwrap().build().unwrap()
    }

    fn set(s: &FiniteSemiring, names: &[&str]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(s.size());
        for n in names {
            out.insert(s.element(n).unwrap());
        }
        out
    }

    fn z2() -> FiniteSemiring {
        FiniteSemiring::new("z2", 2, vec![0, 1, 1, 0], vec![0, 0, 0, 1], 0, Some(1), None).unwrap()
    }

    #[test]
    fn boolean_satisfies_everything() {
        let s = b("bool");
        assert_eq!((s.size(), s.zero(), s.one()), (2, 0, Some(1)));
        assert_eq!(s.add(1, 1), 1);
        assert_eq!(s.mul(1, 1), 1);
        assert!(s.check_axioms().all_hold());
    }

    #[test]
    fn z2_is_not_antinegative() {
        let report = z2().check_axioms();
        assert_eq!(report.witness(Axiom::Antinegative), Some(&Witness(vec![1, 1])));
        assert_eq!(report.failures().count(), 1);
    }

    #[test]
    fn zero_must_annihilate() {
        let s = FiniteSemiring::new("bad", 2, vec![0, 1, 1, 1], vec![0, 1, 0, 1], 0, Some(1), None)
            .unwrap();
        let report = s.check_axioms();
        assert_eq!(report.witness(Axiom::ZeroAnnihilates), Some(&Witness(vec![0, 1])));
    }

    #[test]
    fn missing_identity_has_empty_witness() {
        let s = FiniteSemiring::new("z", 2, vec![0, 1, 1, 1], vec![0, 0, 0, 0], 0, None, None)
            .unwrap();
        let report = s.check_axioms();
        assert_eq!(report.witness(Axiom::Identity), Some(&Witness(vec![])));
        assert!(report.holds(Axiom::Antinegative));
    }

    #[test]
    fn malformed_tables_are_structural_errors() {
        let err = FiniteSemiring::new("x", 2, vec![0, 1, 1, 2], vec![0; 4], 0, None, None);
        assert!(matches!(err, Err(Error::Malformed(_))));
        let err = FiniteSemiring::new("x", 2, vec![0, 1, 1], vec![0; 4], 0, None, None);
        assert!(matches!(err, Err(Error::Malformed(_))));
    }

    #[test]
    fn chains_use_max_and_min() {
        let s = b("chain3");
        assert_eq!(s.names(), ["0", "a", "1"]);
        assert_eq!(s.add(1, 2), 2);
        assert_eq!(s.mul(1, 2), 1);
        assert!(s.check_axioms().all_hold());
        assert!(matches!("chain1".parse::<Builtin>(), Err(Error::Descriptor { .. })));
    }

    #[test]
    fn products_are_componentwise() {
        let s = b("bool x bool");
        assert_eq!(s.size(), 4);
        assert_eq!(s.name_of(s.zero()), "(0,0)");
        assert_eq!(s.name_of(s.one().unwrap()), "(1,1)");
        assert!(s.check_axioms().all_hold());
        let s3 = b("bool x bool x bool");
        assert_eq!(s3.size(), 8);
        assert_eq!(s3.name_of(7), "((1,1),1)");
    }

    #[test]
    fn descriptor_round_trips() {
        for d in ["bool", "chain4", "bool x chain3", "bool x bool x bool"] {
            assert_eq!(d.parse::<Builtin>().unwrap().to_string(), d);
        }
        assert!("bool x".parse::<Builtin>().is_err());
        assert!("bool + bool".parse::<Builtin>().is_err());
    }

    #[test]
    fn annihilators() {
        let s = b("bool");
        assert_eq!(s.annihilator(0), set(&s, &["0", "1"]));
        assert_eq!(s.annihilator(1), set(&s, &["0"]));
        let p = b("bool x bool");
        let x = p.element("(1,0)").unwrap();
        assert_eq!(p.annihilator(x), set(&p, &["(0,0)", "(0,1)"]));
    }

    #[test]
    fn zero_divisor_sets() {
        let s = b("bool");
        assert_eq!(s.zero_divisor_set(), set(&s, &["0"]));
        let p = b("bool x bool");
        assert_eq!(p.zero_divisor_set(), set(&p, &["(0,0)", "(1,0)", "(0,1)"]));
        let c = b("chain3");
        assert_eq!(c.zero_divisor_set(), set(&c, &["0"]));
    }

    #[test]
    fn scaling_restricts_tables() {
        let p = b("bool x bool");
        let e = p.element("(1,0)").unwrap();
        let sub = p.scale_subsemiring(e).unwrap();
        assert_eq!(sub.semiring.names(), ["(0,0)", "(1,0)"]);
        assert_eq!(sub.semiring.one(), Some(1));
        assert!(sub.semiring.check_axioms().all_hold());

        let trivial = p.scale_subsemiring(p.zero()).unwrap();
        assert_eq!(trivial.semiring.size(), 1);

        let s = b("bool");
        assert_eq!(s.scale_subsemiring(1).unwrap().semiring.size(), 2);
    }

    #[test]
    fn scaling_without_identity() {
        // e = a in chain4 gives {0, a}, where a acts as identity; e = 0 gives {0}.
        let c = b("chain4");
        let sub = c.scale_subsemiring(1).unwrap();
        assert_eq!(sub.carrier, vec![0, 1]);
        assert_eq!(sub.semiring.one(), Some(1));
    }

    #[test]
    fn text_format_round_trips() {
        let s = b("bool x chain3");
        let parsed = FiniteSemiring::parse(&s.to_text()).unwrap();
        assert_eq!(parsed.size(), s.size());
        assert_eq!(parsed.check_axioms(), s.check_axioms());
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(parsed.mul(x, y), s.mul(x, y));
                assert_eq!(parsed.add(x, y), s.add(x, y));
            }
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# Z2\nsemiring z2\norder 2\nzero 0\none 1\nadd\n0 1\n1 0\nmul\n0 0\n";
        match FiniteSemiring::parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 10),
            other => panic!("unexpected {other:?}"),
        }
        let text = "semiring z\norder 2\nzero 0\none none\nadd\n0 1\n1 7\n";
        match FiniteSemiring::parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("unexpected {other:?}"),
        }
    }
}
