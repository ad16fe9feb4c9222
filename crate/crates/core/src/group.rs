//! Finite groups with deterministic element enumeration and a bit-exact token grammar.
//!
//! Every element is identified by a canonical index in `0..order`, with the
//! identity always at index 0. The supported kinds are additive cyclic groups,
//! direct products of cyclics (written multiplicatively as words in `a`, `b`,
//! ...), the symmetric group S3 under two presentations, the quaternion group
//! Q8, and the group of q-th roots of unity (stored as exponents mod q).

use std::fmt;

use crate::quaternion::Quaternion;

/// Which defining relations an S3 instance uses. The two presentations parse
/// the same word tokens but map them to different elements, so verifiers can
/// be run under either reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum S3Presentation {
    /// a^2 = e, b^3 = e, ba = ab^2. Elements enumerate as a^i b^j with
    /// i in 0..2, j in 0..3, index = 3i + j.
    A2B3,
    /// a^3 = e, b^2 = e, ba = a^2 b. Elements enumerate as a^i b^j with
    /// i in 0..3, j in 0..2, index = 2i + j.
    A3B2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Additive cyclic group of order n; tokens are the digits "0".."n-1".
    Cyclic(u32),
    /// Direct product of cyclic factors, written multiplicatively. Factor f
    /// uses the letter ('a' + f); tokens are words like "ab2". Enumeration
    /// steps the first factor fastest, so Z2 x Z2 enumerates e, a, b, ab.
    Product(Vec<u32>),
    /// Symmetric group of order 6 under the given presentation.
    S3(S3Presentation),
    /// Quaternion group {1,-1,i,-i,j,-j,k,-k}.
    Q8,
    /// q-th roots of unity, stored additively as exponents mod q.
    Roots(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    BadDescriptor(String),
    BadOrder(String),
    MixedGroups { left: String, right: String },
    BadToken { token: String, group: String },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::BadDescriptor(d) => write!(f, "unsupported group descriptor '{}'", d),
            GroupError::BadOrder(msg) => write!(f, "invalid group parameters: {}", msg),
            GroupError::MixedGroups { left, right } => {
                write!(f, "operands from different groups: {} vs {}", left, right)
            }
            GroupError::BadToken { token, group } => {
                write!(f, "unknown token '{}' for group {}", token, group)
            }
        }
    }
}

impl std::error::Error for GroupError {}

/// A finite group. Cheap to clone; all operations are pure functions of the
/// canonical element indexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    kind: GroupKind,
    order: u32,
}

impl Group {
    pub fn new(kind: GroupKind) -> Result<Group, GroupError> {
        let order = match &kind {
            GroupKind::Cyclic(n) => {
                if *n == 0 {
                    return Err(GroupError::BadOrder("cyclic order must be positive".into()));
                }
                *n
            }
            GroupKind::Product(ns) => {
                if ns.is_empty() || ns.contains(&0) {
                    return Err(GroupError::BadOrder(
                        "product factors must be positive".into(),
                    ));
                }
                if ns.len() > 26 {
                    return Err(GroupError::BadOrder("too many product factors".into()));
                }
                ns.iter().product()
            }
            GroupKind::S3(_) => 6,
            GroupKind::Q8 => 8,
            GroupKind::Roots(q) => {
                if *q == 0 {
                    return Err(GroupError::BadOrder("root order must be positive".into()));
                }
                *q
            }
        };
        Ok(Group { kind, order })
    }

    pub fn cyclic(n: u32) -> Group {
        Group::new(GroupKind::Cyclic(n)).expect("positive order")
    }

    pub fn product(factors: &[u32]) -> Group {
        Group::new(GroupKind::Product(factors.to_vec())).expect("positive factors")
    }

    /// The Klein four group Z2 x Z2 with elements e, a, b, ab.
    pub fn klein() -> Group {
        Group::product(&[2, 2])
    }

    pub fn s3(presentation: S3Presentation) -> Group {
        Group::new(GroupKind::S3(presentation)).expect("fixed order")
    }

    pub fn q8() -> Group {
        Group::new(GroupKind::Q8).expect("fixed order")
    }

    pub fn roots(q: u32) -> Group {
        Group::new(GroupKind::Roots(q)).expect("positive order")
    }

    /// Parses a group descriptor: `z6`, `z2xz2`, `s3-a2b3`, `s3-a3b2`, `q8`,
    /// or `u6` (roots of unity of order 6).
    pub fn parse(desc: &str) -> Result<Group, GroupError> {
        let d = desc.trim();
        let bad = || GroupError::BadDescriptor(desc.to_string());
        match d {
            "q8" => return Ok(Group::q8()),
            "s3-a2b3" => return Ok(Group::s3(S3Presentation::A2B3)),
            "s3-a3b2" => return Ok(Group::s3(S3Presentation::A3B2)),
            _ => {}
        }
        if let Some(rest) = d.strip_prefix('u') {
            let q: u32 = rest.parse().map_err(|_| bad())?;
            return Group::new(GroupKind::Roots(q));
        }
        if d.starts_with('z') {
            let factors: Vec<u32> = d
                .split('x')
                .map(|part| {
                    part.strip_prefix('z')
                        .ok_or_else(bad)?
                        .parse::<u32>()
                        .map_err(|_| bad())
                })
                .collect::<Result<_, _>>()?;
            return match factors.len() {
                0 => Err(bad()),
                1 => Group::new(GroupKind::Cyclic(factors[0])),
                _ => Group::new(GroupKind::Product(factors)),
            };
        }
        Err(bad())
    }

    /// Canonical descriptor, the inverse of [`Group::parse`].
    pub fn descriptor(&self) -> String {
        match &self.kind {
            GroupKind::Cyclic(n) => format!("z{}", n),
            GroupKind::Product(ns) => ns
                .iter()
                .map(|n| format!("z{}", n))
                .collect::<Vec<_>>()
                .join("x"),
            GroupKind::S3(S3Presentation::A2B3) => "s3-a2b3".into(),
            GroupKind::S3(S3Presentation::A3B2) => "s3-a3b2".into(),
            GroupKind::Q8 => "q8".into(),
            GroupKind::Roots(q) => format!("u{}", q),
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(self.kind, GroupKind::S3(_) | GroupKind::Q8)
    }

    /// For roots-of-unity groups, the root order q.
    pub fn roots_order(&self) -> Option<u32> {
        match self.kind {
            GroupKind::Roots(q) => Some(q),
            _ => None,
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.order && b < self.order);
        match &self.kind {
            GroupKind::Cyclic(n) | GroupKind::Roots(n) => (a + b) % n,
            GroupKind::Product(ns) => {
                let mut out = 0u32;
                let mut stride = 1u32;
                let (mut x, mut y) = (a, b);
                for &n in ns {
                    let s = ((x % n) + (y % n)) % n;
                    out += s * stride;
                    stride *= n;
                    x /= n;
                    y /= n;
                }
                out
            }
            GroupKind::S3(p) => s3_mul(*p, a, b),
            GroupKind::Q8 => q8_from_quat(&q8_to_quat(a).mul(&q8_to_quat(b))),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a < self.order);
        match &self.kind {
            GroupKind::Cyclic(n) | GroupKind::Roots(n) => (n - a) % n,
            GroupKind::Product(ns) => {
                let mut out = 0u32;
                let mut stride = 1u32;
                let mut x = a;
                for &n in ns {
                    out += ((n - (x % n)) % n) * stride;
                    stride *= n;
                    x /= n;
                }
                out
            }
            GroupKind::S3(p) => {
                let (i, j) = s3_split(*p, a);
                match p {
                    // (a^i b^j)^-1 = a^i b^(-j 2^i)
                    S3Presentation::A2B3 => s3_join(*p, i, (3 - (j << i) % 3) % 3),
                    // (a^i b^j)^-1 = a^(-i 2^j) b^j
                    S3Presentation::A3B2 => s3_join(*p, (3 - (i << j) % 3) % 3, j),
                }
            }
            GroupKind::Q8 => q8_from_quat(&q8_to_quat(a).conj()),
        }
    }

    /// x * y^-1, the quotient used by the balance verifiers.
    pub fn quotient(&self, x: u32, y: u32) -> u32 {
        self.mul(x, self.inv(y))
    }

    /// Canonical token for an element index.
    pub fn token(&self, a: u32) -> String {
        debug_assert!(a < self.order);
        match &self.kind {
            GroupKind::Cyclic(_) => a.to_string(),
            GroupKind::Product(ns) => {
                let mut word = String::new();
                let mut x = a;
                for (f, &n) in ns.iter().enumerate() {
                    let e = x % n;
                    x /= n;
                    push_letter(&mut word, (b'a' + f as u8) as char, e);
                }
                if word.is_empty() {
                    word.push('e');
                }
                word
            }
            GroupKind::S3(p) => {
                let (i, j) = s3_split(*p, a);
                let mut word = String::new();
                push_letter(&mut word, 'a', i);
                push_letter(&mut word, 'b', j);
                if word.is_empty() {
                    word.push('e');
                }
                word
            }
            GroupKind::Q8 => Q8_TOKENS[a as usize].to_string(),
            GroupKind::Roots(q) => roots_token(*q, a),
        }
    }

    /// Parses a canonical-grammar token to an element index.
    pub fn parse_token(&self, token: &str) -> Result<u32, GroupError> {
        let err = || GroupError::BadToken {
            token: token.to_string(),
            group: self.descriptor(),
        };
        match &self.kind {
            GroupKind::Cyclic(n) => {
                let v: u32 = token.parse().map_err(|_| err())?;
                if v < *n {
                    Ok(v)
                } else {
                    Err(err())
                }
            }
            GroupKind::Product(ns) => {
                let exps = parse_word(token, ns.len()).ok_or_else(err)?;
                let mut out = 0u32;
                let mut stride = 1u32;
                for (f, &n) in ns.iter().enumerate() {
                    out += (exps[f] % n) * stride;
                    stride *= n;
                }
                Ok(out)
            }
            GroupKind::S3(p) => {
                let exps = parse_word(token, 2).ok_or_else(err)?;
                let (na, nb) = match p {
                    S3Presentation::A2B3 => (2, 3),
                    S3Presentation::A3B2 => (3, 2),
                };
                Ok(s3_join(*p, exps[0] % na, exps[1] % nb))
            }
            GroupKind::Q8 => Q8_TOKENS
                .iter()
                .position(|t| *t == token)
                .map(|i| i as u32)
                .ok_or_else(err),
            GroupKind::Roots(q) => parse_roots_token(*q, token).ok_or_else(err),
        }
    }

    pub fn element(&self, index: u32) -> Option<GroupElement> {
        (index < self.order).then(|| GroupElement {
            group: self.clone(),
            index,
        })
    }

    pub fn parse_element(&self, token: &str) -> Result<GroupElement, GroupError> {
        Ok(GroupElement {
            group: self.clone(),
            index: self.parse_token(token)?,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    /// Full-table axiom scan: closure, identity, two-sided inverses, and
    /// associativity. Intended for small orders (cost is order^3).
    pub fn verify_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("identity fails at {}", self.token(a)));
            }
            let inv = self.inv(a);
            if inv >= n {
                return Err(format!("inverse out of range at {}", self.token(a)));
            }
            if self.mul(a, inv) != 0 || self.mul(inv, a) != 0 {
                return Err(format!("inverse fails at {}", self.token(a)));
            }
            for b in 0..n {
                if self.mul(a, b) >= n {
                    return Err(format!(
                        "closure fails at {}*{}",
                        self.token(a),
                        self.token(b)
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!(
                            "associativity fails at ({},{},{})",
                            self.token(a),
                            self.token(b),
                            self.token(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// An element of a specific group, carrying its group handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    group: Group,
    index: u32,
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn token(&self) -> String {
        self.group.token(self.index)
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.group != rhs.group {
            return Err(GroupError::MixedGroups {
                left: self.group.descriptor(),
                right: rhs.group.descriptor(),
            });
        }
        Ok(GroupElement {
            group: self.group.clone(),
            index: self.group.mul(self.index, rhs.index),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            index: self.group.inv(self.index),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

const Q8_TOKENS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

fn q8_to_quat(a: u32) -> Quaternion {
    let unit = match a >> 1 {
        0 => Quaternion::new(1, 0, 0, 0),
        1 => Quaternion::new(0, 1, 0, 0),
        2 => Quaternion::new(0, 0, 1, 0),
        _ => Quaternion::new(0, 0, 0, 1),
    };
    if a & 1 == 1 {
        unit.neg()
    } else {
        unit
    }
}

fn q8_from_quat(q: &Quaternion) -> u32 {
    let (axis, value) = [(0u32, q.w), (1, q.x), (2, q.y), (3, q.z)]
        .into_iter()
        .find(|(_, v)| *v != 0)
        .expect("unit quaternion");
    debug_assert!(value == 1 || value == -1);
    (axis << 1) | u32::from(value < 0)
}

fn s3_split(p: S3Presentation, a: u32) -> (u32, u32) {
    match p {
        S3Presentation::A2B3 => (a / 3, a % 3),
        S3Presentation::A3B2 => (a / 2, a % 2),
    }
}

fn s3_join(p: S3Presentation, i: u32, j: u32) -> u32 {
    match p {
        S3Presentation::A2B3 => i * 3 + j,
        S3Presentation::A3B2 => i * 2 + j,
    }
}

fn s3_mul(p: S3Presentation, a: u32, b: u32) -> u32 {
    let (i1, j1) = s3_split(p, a);
    let (i2, j2) = s3_split(p, b);
    match p {
        // b^j a = a b^(2j): (a^i1 b^j1)(a^i2 b^j2) = a^(i1+i2) b^(j1 2^i2 + j2)
        S3Presentation::A2B3 => s3_join(p, (i1 + i2) % 2, ((j1 << i2) + j2) % 3),
        // b a^i = a^(2i) b: (a^i1 b^j1)(a^i2 b^j2) = a^(i1 + i2 2^j1) b^(j1+j2)
        S3Presentation::A3B2 => s3_join(p, (i1 + (i2 << j1)) % 3, (j1 + j2) % 2),
    }
}

fn push_letter(word: &mut String, letter: char, exponent: u32) {
    match exponent {
        0 => {}
        1 => word.push(letter),
        e => {
            word.push(letter);
            word.push_str(&e.to_string());
        }
    }
}

/// Parses a multiplicative word like "ab2" into per-factor exponents. Letters
/// must appear in strictly ascending order, each at most once. "e" alone is
/// the identity.
fn parse_word(token: &str, factors: usize) -> Option<Vec<u32>> {
    let mut exps = vec![0u32; factors];
    if token == "e" {
        return Some(exps);
    }
    if token.is_empty() {
        return None;
    }
    let mut chars = token.chars().peekable();
    let mut last_factor: Option<usize> = None;
    while let Some(c) = chars.next() {
        if !c.is_ascii_lowercase() || c == 'e' {
            return None;
        }
        let f = (c as u8 - b'a') as usize;
        if f >= factors || last_factor.is_some_and(|prev| f <= prev) {
            return None;
        }
        last_factor = Some(f);
        let mut digits = String::new();
        while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            digits.push(chars.next().unwrap());
        }
        exps[f] = if digits.is_empty() {
            1
        } else {
            digits.parse().ok()?
        };
    }
    Some(exps)
}

/// Exponent step of the token letter `w` for roots of order q. For q = 2 mod 4
/// the group splits as {+-1} x <w> with w a primitive (q/2)-th root, so `w`
/// means zeta^2; otherwise `w` is a primitive q-th root.
fn roots_w_step(q: u32) -> u32 {
    if q % 4 == 2 {
        2
    } else {
        1
    }
}

fn roots_token(q: u32, exp: u32) -> String {
    let step = roots_w_step(q);
    let (negated, reduced) = if q.is_multiple_of(2) {
        let negated = if step == 2 {
            exp % 2 == 1
        } else {
            exp >= q / 2
        };
        if negated {
            (true, (exp + q / 2) % q)
        } else {
            (false, exp)
        }
    } else {
        (false, exp)
    };
    debug_assert!(reduced % step == 0);
    let k = reduced / step;
    let mut out = String::new();
    if negated {
        out.push('-');
    }
    match k {
        0 => out.push('1'),
        1 => out.push('w'),
        _ => out.push_str(&format!("w^{}", k)),
    }
    out
}

fn parse_roots_token(q: u32, token: &str) -> Option<u32> {
    let (negated, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    if negated && !q.is_multiple_of(2) {
        // -x has no meaning when -1 is not in the group
        return None;
    }
    let k = if body == "1" {
        0
    } else if body == "w" {
        1
    } else {
        let exp = body.strip_prefix("w^")?;
        exp.parse::<u32>().ok()?
    };
    let mut e = (k % q) * roots_w_step(q) % q;
    if negated {
        e = (e + q / 2) % q;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = Group::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.token(0), "0");
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
    }

    #[test]
    fn klein_has_expected_tokens() {
        let g = Group::klein();
        let tokens: Vec<String> = g.elements().map(|i| g.token(i)).collect();
        assert_eq!(tokens, ["e", "a", "b", "ab"]);
        let a = g.parse_token("a").unwrap();
        let ab = g.parse_token("ab").unwrap();
        let b = g.parse_token("b").unwrap();
        assert_eq!(g.mul(a, ab), b);
    }

    #[test]
    fn q8_structure() {
        let g = Group::q8();
        assert_eq!(g.order(), 8);
        let i = g.parse_token("i").unwrap();
        let j = g.parse_token("j").unwrap();
        assert_eq!(g.token(g.mul(i, j)), "k");
        assert_eq!(g.token(g.mul(j, i)), "-k");
        assert_eq!(g.token(g.inv(i)), "-i");
    }

    #[test]
    fn s3_presentation_relations() {
        let g = Group::s3(S3Presentation::A2B3);
        let a = g.parse_token("a").unwrap();
        let b = g.parse_token("b").unwrap();
        // ba = ab^2
        assert_eq!(g.mul(b, a), g.parse_token("ab2").unwrap());
        let h = Group::s3(S3Presentation::A3B2);
        let a = h.parse_token("a").unwrap();
        let b = h.parse_token("b").unwrap();
        // ba = a^2 b
        assert_eq!(h.mul(b, a), h.parse_token("a2b").unwrap());
    }

    #[test]
    fn s3_tokens_differ_between_presentations() {
        let g = Group::s3(S3Presentation::A2B3);
        let h = Group::s3(S3Presentation::A3B2);
        // b^2 is a distinct element under a2b3 but collapses under a3b2
        assert_ne!(g.parse_token("b2").unwrap(), g.identity());
        assert_eq!(h.parse_token("b2").unwrap(), h.identity());
    }

    #[test]
    fn roots_sign_folding_order_six() {
        let g = Group::roots(6);
        let cases = [
            ("1", 0),
            ("-w^2", 1),
            ("w", 2),
            ("-1", 3),
            ("w^2", 4),
            ("-w", 5),
        ];
        for (tok, exp) in cases {
            assert_eq!(g.parse_token(tok).unwrap(), exp, "token {}", tok);
            assert_eq!(g.token(exp), tok, "exponent {}", exp);
        }
    }

    #[test]
    fn roots_order_four_uses_primitive_root() {
        let g = Group::roots(4);
        assert_eq!(g.parse_token("w").unwrap(), 1);
        assert_eq!(g.token(2), "-1");
        assert_eq!(g.token(3), "-w");
    }

    #[test]
    fn sign_rejected_for_odd_root_order() {
        let g = Group::roots(5);
        assert!(g.parse_token("-w").is_err());
        assert!(g.parse_token("w^3").is_ok());
    }

    #[test]
    fn axioms_hold_for_all_supported_small_groups() {
        let mut groups = vec![
            Group::klein(),
            Group::product(&[2, 3]),
            Group::product(&[2, 2, 2]),
            Group::s3(S3Presentation::A2B3),
            Group::s3(S3Presentation::A3B2),
            Group::q8(),
        ];
        for n in 1..=24 {
            groups.push(Group::cyclic(n));
        }
        for q in [2, 3, 4, 5, 6, 12] {
            groups.push(Group::roots(q));
        }
        for g in groups {
            g.verify_axioms()
                .unwrap_or_else(|e| panic!("axioms fail for {}: {}", g, e));
        }
    }

    #[test]
    fn token_round_trip_everywhere() {
        for g in [
            Group::cyclic(7),
            Group::klein(),
            Group::s3(S3Presentation::A2B3),
            Group::s3(S3Presentation::A3B2),
            Group::q8(),
            Group::roots(6),
            Group::roots(12),
            Group::roots(5),
        ] {
            for a in g.elements() {
                assert_eq!(g.parse_token(&g.token(a)).unwrap(), a, "group {}", g);
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["z6", "z2xz2", "z2xz3", "s3-a2b3", "s3-a3b2", "q8", "u6"] {
            assert_eq!(Group::parse(d).unwrap().descriptor(), d);
        }
        assert!(Group::parse("d8").is_err());
        assert!(Group::parse("z0").is_err());
    }

    #[test]
    fn mixed_group_elements_refuse_to_multiply() {
        let g = Group::cyclic(6);
        let h = Group::roots(6);
        let x = g.element(1).unwrap();
        let y = h.element(1).unwrap();
        assert!(x.mul(&y).is_err());
    }
}
