//! A small standalone validator for HOA v1 text, written against the format
//! grammar. It parses the header and body, checks index bounds, and for the
//! `deterministic` and `complete` properties checks the edge labels by
//! enumerating valuations.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Header(String),
    Ident(String),
    Str(String),
    Int(u64),
    Alias(String),
    Punct(char),
    Body,
    End,
    Abort,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 1;
            i += 2;
            while depth > 0 {
                match (chars.get(i), chars.get(i + 1)) {
                    (Some('/'), Some('*')) => {
                        depth += 1;
                        i += 2;
                    }
                    (Some('*'), Some('/')) => {
                        depth -= 1;
                        i += 2;
                    }
                    (Some(_), _) => i += 1,
                    (None, _) => return Err("unterminated comment".into()),
                }
            }
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        let e = chars.get(i + 1).ok_or("bad escape")?;
                        s.push(*e);
                        i += 2;
                    }
                    Some(ch) => {
                        s.push(*ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Str(s));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if s.len() > 1 && s.starts_with('0') {
                return Err(format!("integer with leading zero: {s}"));
            }
            out.push(Tok::Int(s.parse().map_err(|_| "integer overflow")?));
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            let rest: String = chars[i..].iter().take(9).collect();
            if rest.starts_with("--BODY--") {
                out.push(Tok::Body);
                i += 8;
            } else if rest.starts_with("--END--") {
                out.push(Tok::End);
                i += 7;
            } else if rest.starts_with("--ABORT--") {
                out.push(Tok::Abort);
                i += 9;
            } else {
                return Err(format!("unexpected `{rest}`"));
            }
        } else if c == '@' || c.is_ascii_alphabetic() || c == '_' {
            let alias = c == '@';
            let start = if alias { i + 1 } else { i };
            i = start;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric()
                    || chars[i] == '_'
                    || chars[i] == '-'
                    || chars[i] == '.')
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word.is_empty() {
                return Err("empty alias name".into());
            }
            if alias {
                out.push(Tok::Alias(word));
            } else if chars.get(i) == Some(&':') {
                i += 1;
                out.push(Tok::Header(word));
            } else {
                out.push(Tok::Ident(word));
            }
        } else if "!&|()[]{}".contains(c) {
            out.push(Tok::Punct(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// An edge label (absent for state-labelled edges) and its targets.
type Edge = (Option<Label>, Vec<u64>);

#[derive(Debug, Clone)]
enum Label {
    Const(bool),
    Ap(usize),
    Alias(String),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, v: u64, aliases: &BTreeMap<String, Label>) -> bool {
        match self {
            Label::Const(b) => *b,
            Label::Ap(i) => v >> i & 1 == 1,
            Label::Alias(a) => aliases[a].eval(v, aliases),
            Label::Not(l) => !l.eval(v, aliases),
            Label::And(l, r) => l.eval(v, aliases) && r.eval(v, aliases),
            Label::Or(l, r) => l.eval(v, aliases) || r.eval(v, aliases),
        }
    }
}

#[derive(Debug, Clone)]
enum Acc {
    Const(bool),
    Fin(bool, u64),
    Inf(bool, u64),
    And(Box<Acc>, Box<Acc>),
    Or(Box<Acc>, Box<Acc>),
}

impl Acc {
    fn sets(&self, out: &mut BTreeSet<u64>) {
        match self {
            Acc::Const(_) => {}
            Acc::Fin(_, n) | Acc::Inf(_, n) => {
                out.insert(*n);
            }
            Acc::And(l, r) | Acc::Or(l, r) => {
                l.sets(out);
                r.sets(out);
            }
        }
    }

    /// Rendering with the same parenthesization conventions as the format
    /// examples, used to compare against canonical acceptance strings.
    fn render(&self) -> String {
        match self {
            Acc::Const(true) => "t".into(),
            Acc::Const(false) => "f".into(),
            Acc::Fin(neg, n) => format!("Fin({}{n})", if *neg { "!" } else { "" }),
            Acc::Inf(neg, n) => format!("Inf({}{n})", if *neg { "!" } else { "" }),
            Acc::And(l, r) => format!("({}&{})", l.render(), r.render()),
            Acc::Or(l, r) => format!("{}|{}", l.render(), r.render()),
        }
    }
}

/// Summary of a successfully validated automaton.
#[derive(Debug, Clone)]
pub struct HoaSummary {
    pub version: String,
    pub states: u64,
    pub aps: Vec<String>,
    pub acc_sets: u64,
    pub acc_name: Vec<String>,
    pub acceptance: String,
    pub properties: BTreeSet<String>,
    pub edges: usize,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, String> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        Ok(t)
    }

    fn punct(&mut self, c: char) -> Result<(), String> {
        match self.next()? {
            Tok::Punct(p) if p == c => Ok(()),
            t => Err(format!("expected `{c}`, got {t:?}")),
        }
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn int(&mut self) -> Result<u64, String> {
        match self.next()? {
            Tok::Int(n) => Ok(n),
            t => Err(format!("expected integer, got {t:?}")),
        }
    }

    fn string(&mut self) -> Result<String, String> {
        match self.next()? {
            Tok::Str(s) => Ok(s),
            t => Err(format!("expected string, got {t:?}")),
        }
    }

    fn label_or(&mut self) -> Result<Label, String> {
        let mut l = self.label_and()?;
        while self.is_punct('|') {
            self.pos += 1;
            l = Label::Or(Box::new(l), Box::new(self.label_and()?));
        }
        Ok(l)
    }

    fn label_and(&mut self) -> Result<Label, String> {
        let mut l = self.label_atom()?;
        while self.is_punct('&') {
            self.pos += 1;
            l = Label::And(Box::new(l), Box::new(self.label_atom()?));
        }
        Ok(l)
    }

    fn label_atom(&mut self) -> Result<Label, String> {
        match self.next()? {
            Tok::Ident(s) if s == "t" => Ok(Label::Const(true)),
            Tok::Ident(s) if s == "f" => Ok(Label::Const(false)),
            Tok::Int(n) => Ok(Label::Ap(n as usize)),
            Tok::Alias(a) => Ok(Label::Alias(a)),
            Tok::Punct('!') => Ok(Label::Not(Box::new(self.label_atom()?))),
            Tok::Punct('(') => {
                let l = self.label_or()?;
                self.punct(')')?;
                Ok(l)
            }
            t => Err(format!("bad label token {t:?}")),
        }
    }

    fn acc_or(&mut self) -> Result<Acc, String> {
        let mut a = self.acc_and()?;
        while self.is_punct('|') {
            self.pos += 1;
            a = Acc::Or(Box::new(a), Box::new(self.acc_and()?));
        }
        Ok(a)
    }

    fn acc_and(&mut self) -> Result<Acc, String> {
        let mut a = self.acc_atom()?;
        while self.is_punct('&') {
            self.pos += 1;
            a = Acc::And(Box::new(a), Box::new(self.acc_atom()?));
        }
        Ok(a)
    }

    fn acc_atom(&mut self) -> Result<Acc, String> {
        match self.next()? {
            Tok::Ident(s) if s == "t" => Ok(Acc::Const(true)),
            Tok::Ident(s) if s == "f" => Ok(Acc::Const(false)),
            Tok::Ident(s) if s == "Fin" || s == "Inf" => {
                self.punct('(')?;
                let neg = self.is_punct('!');
                if neg {
                    self.pos += 1;
                }
                let n = self.int()?;
                self.punct(')')?;
                Ok(if s == "Fin" {
                    Acc::Fin(neg, n)
                } else {
                    Acc::Inf(neg, n)
                })
            }
            Tok::Punct('(') => {
                let a = self.acc_or()?;
                self.punct(')')?;
                Ok(a)
            }
            t => Err(format!("bad acceptance token {t:?}")),
        }
    }

    fn state_conj(&mut self) -> Result<Vec<u64>, String> {
        let mut v = vec![self.int()?];
        while self.is_punct('&') {
            self.pos += 1;
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn acc_sig(&mut self) -> Result<Vec<u64>, String> {
        let mut v = Vec::new();
        if self.is_punct('{') {
            self.pos += 1;
            while !self.is_punct('}') {
                v.push(self.int()?);
            }
            self.pos += 1;
        }
        Ok(v)
    }

    fn header_args(&mut self) -> Vec<Tok> {
        let mut v = Vec::new();
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Header(_) | Tok::Body) {
                break;
            }
            v.push(t.clone());
            self.pos += 1;
        }
        v
    }
}

fn expected_acceptance(name: &[String]) -> Option<String> {
    let head = name.first()?.as_str();
    let n = |i: usize| name.get(i).and_then(|s| s.parse::<u64>().ok());
    match (head, name.len()) {
        ("Buchi", 1) => Some("1 Inf(0)".into()),
        ("co-Buchi", 1) => Some("1 Fin(0)".into()),
        ("all", 1) => Some("0 t".into()),
        ("none", 1) => Some("0 f".into()),
        ("Rabin", 2) => {
            let k = n(1)?;
            if k == 0 {
                return Some("0 f".into());
            }
            let parts: Vec<String> = (0..k)
                .map(|i| format!("(Fin({})&Inf({}))", 2 * i, 2 * i + 1))
                .collect();
            Some(format!("{} {}", 2 * k, parts.join("|")))
        }
        _ => None,
    }
}

/// Validate one automaton. Returns a summary or a description of the first
/// problem found.
pub fn validate(text: &str) -> Result<HoaSummary, String> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let version = match (p.next()?, p.next()?) {
        (Tok::Header(h), Tok::Ident(v)) if h == "HOA" => v,
        _ => return Err("must start with `HOA: <version>`".into()),
    };
    if version != "v1" && version != "v1.1" {
        return Err(format!("unsupported version {version}"));
    }
    let mut seen = BTreeSet::new();
    let mut states = None;
    let mut starts: Vec<Vec<u64>> = Vec::new();
    let mut aps: Option<Vec<String>> = None;
    let mut aliases: BTreeMap<String, Label> = BTreeMap::new();
    let mut acceptance: Option<(u64, Acc)> = None;
    let mut acc_name = Vec::new();
    let mut properties = BTreeSet::new();
    loop {
        let h = match p.next()? {
            Tok::Body => break,
            Tok::Header(h) => h,
            t => return Err(format!("expected header, got {t:?}")),
        };
        let once = ["States", "AP", "Acceptance", "acc-name", "tool", "name"];
        if once.contains(&h.as_str()) && !seen.insert(h.clone()) {
            return Err(format!("duplicate header {h}"));
        }
        match h.as_str() {
            "States" => states = Some(p.int()?),
            "Start" => starts.push(p.state_conj()?),
            "AP" => {
                let n = p.int()?;
                let mut names = Vec::new();
                while matches!(p.peek(), Some(Tok::Str(_))) {
                    names.push(p.string()?);
                }
                if names.len() as u64 != n {
                    return Err(format!("AP declares {n} but lists {}", names.len()));
                }
                let distinct: BTreeSet<_> = names.iter().collect();
                if distinct.len() != names.len() {
                    return Err("duplicate atomic proposition".into());
                }
                aps = Some(names);
            }
            "Alias" => {
                let name = match p.next()? {
                    Tok::Alias(a) => a,
                    t => return Err(format!("bad alias name {t:?}")),
                };
                let l = p.label_or()?;
                aliases.insert(name, l);
            }
            "Acceptance" => {
                let n = p.int()?;
                acceptance = Some((n, p.acc_or()?));
            }
            "acc-name" => {
                for t in p.header_args() {
                    match t {
                        Tok::Ident(s) => acc_name.push(s),
                        Tok::Int(n) => acc_name.push(n.to_string()),
                        t => return Err(format!("bad acc-name argument {t:?}")),
                    }
                }
                if acc_name.is_empty() {
                    return Err("empty acc-name".into());
                }
            }
            "tool" => {
                p.string()?;
                if matches!(p.peek(), Some(Tok::Str(_))) {
                    p.string()?;
                }
            }
            "name" => {
                p.string()?;
            }
            "properties" => {
                for t in p.header_args() {
                    match t {
                        Tok::Ident(s) => {
                            properties.insert(s);
                        }
                        t => return Err(format!("bad property {t:?}")),
                    }
                }
            }
            other if other.starts_with(|c: char| c.is_ascii_uppercase()) => {
                return Err(format!("unknown header {other}"));
            }
            _ => {
                p.header_args();
            }
        }
    }
    let (acc_sets, acc) = acceptance.ok_or("missing Acceptance header")?;
    let mut used = BTreeSet::new();
    acc.sets(&mut used);
    if let Some(&m) = used.iter().next_back() {
        if m >= acc_sets {
            return Err(format!("acceptance uses set {m} of {acc_sets}"));
        }
    }
    let acceptance = format!("{acc_sets} {}", acc.render());
    if let Some(expected) = expected_acceptance(&acc_name) {
        if expected != acceptance {
            return Err(format!(
                "acc-name {} does not match `{acceptance}`",
                acc_name.join(" ")
            ));
        }
    }
    let aps = aps.unwrap_or_default();
    let n_ap = aps.len();
    if n_ap > 16 {
        return Err("too many propositions to check labels".into());
    }
    fn check_label(
        l: &Label,
        n_ap: usize,
        aliases: &BTreeMap<String, Label>,
    ) -> Result<(), String> {
        match l {
            Label::Const(_) => Ok(()),
            Label::Ap(i) if *i < n_ap => Ok(()),
            Label::Ap(i) => Err(format!("AP index {i} out of range")),
            Label::Alias(a) if aliases.contains_key(a) => Ok(()),
            Label::Alias(a) => Err(format!("undefined alias @{a}")),
            Label::Not(x) => check_label(x, n_ap, aliases),
            Label::And(x, y) | Label::Or(x, y) => {
                check_label(x, n_ap, aliases)?;
                check_label(y, n_ap, aliases)
            }
        }
    }
    for l in aliases.values() {
        check_label(l, n_ap, &BTreeMap::new()).or_else(|_| check_label(l, n_ap, &aliases))?;
    }

    let mut defined = BTreeSet::new();
    let mut edges_of: BTreeMap<u64, Vec<Edge>> = BTreeMap::new();
    let mut edges = 0;
    let mut universal = starts.iter().any(|s| s.len() > 1);
    let mut edge_marked = false;
    loop {
        match p.next()? {
            Tok::End => break,
            Tok::Abort => return Err("automaton aborted".into()),
            Tok::Header(h) if h == "State" => {}
            t => return Err(format!("expected State or --END--, got {t:?}")),
        }
        let state_label = if p.is_punct('[') {
            p.pos += 1;
            let l = p.label_or()?;
            p.punct(']')?;
            check_label(&l, n_ap, &aliases)?;
            Some(l)
        } else {
            None
        };
        let q = p.int()?;
        if !defined.insert(q) {
            return Err(format!("state {q} defined twice"));
        }
        if matches!(p.peek(), Some(Tok::Str(_))) {
            p.string()?;
        }
        let sig = p.acc_sig()?;
        if sig.iter().any(|&s| s >= acc_sets) {
            return Err(format!("state {q} uses an undeclared acceptance set"));
        }
        let list = edges_of.entry(q).or_default();
        loop {
            match p.peek() {
                Some(Tok::Header(_)) | Some(Tok::End) | Some(Tok::Abort) | None => break,
                _ => {}
            }
            let label = if p.is_punct('[') {
                p.pos += 1;
                let l = p.label_or()?;
                p.punct(']')?;
                check_label(&l, n_ap, &aliases)?;
                Some(l)
            } else {
                None
            };
            if label.is_some() == state_label.is_some() {
                return Err(format!("state {q}: mixing state and edge labels"));
            }
            let targets = p.state_conj()?;
            universal |= targets.len() > 1;
            let esig = p.acc_sig()?;
            if esig.iter().any(|&s| s >= acc_sets) {
                return Err(format!("edge of {q} uses an undeclared acceptance set"));
            }
            edge_marked |= !esig.is_empty();
            list.push((label.clone().or_else(|| state_label.clone()), targets));
            edges += 1;
        }
    }
    if p.pos != p.toks.len() {
        return Err("tokens after --END--".into());
    }
    let states = states.unwrap_or(defined.len() as u64);
    let in_range = |q: &u64| *q < states;
    if let Some(q) = defined.iter().find(|q| !in_range(q)) {
        return Err(format!("state {q} out of range"));
    }
    for s in starts.iter().flatten() {
        if !in_range(s) {
            return Err(format!("start state {s} out of range"));
        }
    }
    for (q, list) in &edges_of {
        for (_, ts) in list {
            if let Some(t) = ts.iter().find(|t| !in_range(t)) {
                return Err(format!("edge {q} -> {t} out of range"));
            }
        }
    }
    if universal && !properties.contains("univ-branch") {
        return Err("universal branching without the univ-branch property".into());
    }
    if properties.contains("state-acc") && edge_marked {
        return Err("state-acc automaton with edge acceptance marks".into());
    }
    if properties.contains("deterministic") {
        if starts.len() > 1 || universal {
            return Err("deterministic automaton with several or universal starts".into());
        }
        for (q, list) in &edges_of {
            for v in 0..1u64 << n_ap {
                let hits = list
                    .iter()
                    .filter(|(l, _)| l.as_ref().is_none_or(|l| l.eval(v, &aliases)))
                    .count();
                if hits > 1 {
                    return Err(format!("state {q} is not deterministic"));
                }
            }
        }
    }
    if properties.contains("complete") {
        if starts.is_empty() {
            return Err("complete automaton without a start state".into());
        }
        for q in 0..states {
            let list = edges_of.get(&q).map(Vec::as_slice).unwrap_or(&[]);
            for v in 0..1u64 << n_ap {
                if !list
                    .iter()
                    .any(|(l, _)| l.as_ref().is_none_or(|l| l.eval(v, &aliases)))
                {
                    return Err(format!("state {q} is not complete"));
                }
            }
        }
    }
    Ok(HoaSummary {
        version,
        states,
        aps,
        acc_sets,
        acc_name,
        acceptance,
        properties,
        edges,
    })
}

#[cfg(test)]
mod self_tests {
    #[allow(unused_imports)]
    use super::*;

    const GOOD: &str = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nacc-name: Buchi\n\
        Acceptance: 1 Inf(0)\nproperties: deterministic complete\n--BODY--\n\
        State: 0 {0}\n[0] 0\n[!0] 1\nState: 1\n[t] 1\n--END--\n";

    #[test]
    fn accepts_well_formed_input() {
        let s = validate(GOOD).unwrap();
        assert_eq!(s.states, 2);
        assert_eq!(s.acceptance, "1 Inf(0)");
    }

    #[test]
    fn rejects_malformed_input() {
        for (from, to) in [
            ("States: 2", "States: 1"),
            ("[0] 0", "[1] 0"),
            ("[!0] 1", "[t] 1"),
            ("[!0] 1\n", ""),
            ("Inf(0)", "Fin(0)"),
            ("{0}", "{1}"),
            ("--END--", ""),
            ("HOA: v1", "HOA: v2"),
            ("AP: 1", "AP: 2"),
        ] {
            let bad = GOOD.replacen(from, to, 1);
            assert!(validate(&bad).is_err(), "accepted after {from} -> {to}");
        }
    }
}
