use std::collections::{HashMap, HashSet};

use super::{AutDecl, CubeDecl, Document, Kind, MetaDecl, OrbitDecl, PCubeDecl, ParseError, Pos};

/// Parses raw bytes, reporting invalid UTF-8 at its position.
pub fn parse_bytes(bytes: &[u8]) -> Result<Document, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError::Encoding { line, col })
        }
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    at: usize,
    line: usize,
    _text: &'a str,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            at: 0,
            line,
            _text: text,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.at + 1,
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.at + 1,
            expected: expected.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.at;
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.at += 1;
        }
        self.at > start
    }

    /// True at end of line or at a comment.
    fn at_end(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), None | Some('#'))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("end of line"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.at;
        while self.peek().is_some_and(is_name_char) {
            self.at += 1;
        }
        if self.at == start {
            return Err(self.err(what));
        }
        Ok((self.chars[start..self.at].iter().collect(), pos))
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let pos = self.at;
        match self.name(&format!("`{word}`")) {
            Ok((w, _)) if w == word => Ok(()),
            _ => {
                self.at = pos;
                self.skip_ws();
                Err(self.err(&format!("`{word}`")))
            }
        }
    }

    fn unsigned(&mut self, what: &str) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        let digits: String = self.chars[start..self.at].iter().collect();
        let value = digits.parse().map_err(|_| {
            self.at = start;
            self.err(what)
        })?;
        if self.peek().is_some_and(is_name_char) {
            return Err(self.err(what));
        }
        Ok(value)
    }

    fn integer(&mut self, what: &str) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.at;
        let negative = self.eat('-');
        let magnitude = self.unsigned(what).map_err(|_| {
            self.at = start;
            self.err(what)
        })?;
        let value = i64::try_from(magnitude).map_err(|_| {
            self.at = start;
            self.err(what)
        })?;
        Ok(if negative { -value } else { value })
    }

    /// `()` or one or more `(x y ...)` groups.
    fn cycles<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<(T, Pos), ParseError>,
    ) -> Result<Vec<(Vec<T>, Vec<Pos>)>, ParseError> {
        self.skip_ws();
        if self.peek() != Some('(') {
            return Err(self.err("`(`"));
        }
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if !self.eat('(') {
                break;
            }
            self.skip_ws();
            if self.eat(')') {
                if out.is_empty() {
                    self.skip_ws();
                    if self.peek() == Some('(') {
                        return Err(self.err("end of line"));
                    }
                    return Ok(out);
                }
                self.at -= 1;
                return Err(self.err("cycle element"));
            }
            let mut items = Vec::new();
            let mut positions = Vec::new();
            loop {
                let (x, pos) = item(self)?;
                items.push(x);
                positions.push(pos);
                self.skip_ws();
                if self.eat(')') {
                    break;
                }
                if self.peek().is_none() {
                    return Err(self.err("`)`"));
                }
            }
            out.push((items, positions));
        }
        Ok(out)
    }
}

fn check_arity(count: usize, pos: Pos) -> Result<(), ParseError> {
    if count.is_power_of_two() {
        Ok(())
    } else {
        Err(ParseError::Arity {
            line: pos.line,
            col: pos.col,
            count,
        })
    }
}

fn duplicate(pos: Pos, what: String) -> ParseError {
    ParseError::Duplicate {
        line: pos.line,
        col: pos.col,
        what,
    }
}

fn check_cycle_elements<T: std::hash::Hash + Eq + std::fmt::Display>(
    cycles: &[(Vec<T>, Vec<Pos>)],
) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for (items, positions) in cycles {
        for (x, pos) in items.iter().zip(positions) {
            if !seen.insert(x) {
                return Err(duplicate(*pos, format!("cycle element {x}")));
            }
        }
    }
    Ok(())
}

fn header(c: &mut Cursor) -> Result<(u32, Kind), ParseError> {
    c.skip_ws();
    c.keyword("cxc")?;
    if !c.skip_ws() {
        return Err(c.err("space"));
    }
    let start = c.at;
    let version = c.unsigned("format version `1`")?;
    if version != 1 {
        c.at = start;
        return Err(c.err("format version `1`"));
    }
    if !c.skip_ws() {
        return Err(c.err("space"));
    }
    let at = c.at;
    let kind = match c.name("`finite` or `periodic`") {
        Ok((w, _)) if w == "finite" => Kind::Finite,
        Ok((w, _)) if w == "periodic" => Kind::Periodic,
        _ => {
            c.at = at;
            return Err(c.err("`finite` or `periodic`"));
        }
    };
    c.finish()?;
    Ok((version as u32, kind))
}

/// Parses a `.cxc` document. Never panics.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut doc: Option<Document> = None;
    let mut orbit_refs: Vec<(String, Pos)> = Vec::new();
    let mut ids: HashMap<String, Pos> = HashMap::new();
    let mut orbit_names: HashSet<String> = HashSet::new();
    let mut last_line = 1;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let mut c = Cursor::new(line, line_no);
        if c.at_end() {
            continue;
        }
        let Some(d) = doc.as_mut() else {
            let (version, kind) = header(&mut c)?;
            doc = Some(Document {
                version,
                ..Document::empty(kind)
            });
            continue;
        };
        let start = c.at;
        let expected = match d.kind {
            Kind::Finite => "`cube`, `aut` or `meta`",
            Kind::Periodic => "`orbit`, `pcube`, `aut` or `meta`",
        };
        let word = match c.name(expected) {
            Ok((w, _)) => w,
            Err(_) => return Err(c.err(expected)),
        };
        let pos = Pos {
            line: line_no,
            col: start + 1,
        };
        match (word.as_str(), d.kind) {
            ("meta", _) => {
                let (key, _) = c.name("metadata key")?;
                c.skip_ws();
                let rest: String = c.chars[c.at..].iter().collect();
                let value = match rest.find('#') {
                    Some(k) => rest[..k].trim_end(),
                    None => rest.trim_end(),
                };
                let value = value.split_whitespace().collect::<Vec<_>>().join(" ");
                d.meta.push(MetaDecl { key, value, pos });
            }
            ("cube", Kind::Finite) => {
                let (id, id_pos) = c.name("cube id")?;
                c.skip_ws();
                c.expect(':', "`:`")?;
                let mut corners = Vec::new();
                while !c.at_end() {
                    corners.push(c.unsigned("vertex id")?);
                }
                check_arity(corners.len(), pos)?;
                if ids.insert(id.clone(), id_pos).is_some() {
                    return Err(duplicate(id_pos, format!("cube id {id:?}")));
                }
                d.cubes.push(CubeDecl { id, corners, pos });
            }
            ("orbit", Kind::Periodic) => {
                let (name, name_pos) = c.name("orbit name")?;
                c.finish()?;
                if !orbit_names.insert(name.clone()) {
                    return Err(duplicate(name_pos, format!("orbit {name:?}")));
                }
                d.orbits.push(OrbitDecl { name, pos });
            }
            ("pcube", Kind::Periodic) => {
                let (id, id_pos) = c.name("cube id")?;
                c.skip_ws();
                c.expect(':', "`:`")?;
                let mut corners = Vec::new();
                while !c.at_end() {
                    c.expect('(', "`(`")?;
                    let (name, name_pos) = c.name("orbit name")?;
                    orbit_refs.push((name.clone(), name_pos));
                    c.skip_ws();
                    c.expect(',', "`,`")?;
                    c.skip_ws();
                    let z = match c.peek() {
                        Some('0') => 0,
                        Some('1') => 1,
                        _ => return Err(c.err("offset `0` or `1`")),
                    };
                    c.at += 1;
                    c.skip_ws();
                    c.expect(')', "`)`")?;
                    corners.push((name, z));
                }
                check_arity(corners.len(), pos)?;
                if ids.insert(id.clone(), id_pos).is_some() {
                    return Err(duplicate(id_pos, format!("cube id {id:?}")));
                }
                d.pcubes.push(PCubeDecl { id, corners, pos });
            }
            ("aut", kind) => {
                if d.aut.is_some() {
                    return Err(duplicate(pos, "automorphism".to_string()));
                }
                let aut = match kind {
                    Kind::Finite => {
                        c.keyword("perm")?;
                        let cycles = c.cycles(|c| {
                            c.skip_ws();
                            let p = c.pos();
                            c.unsigned("vertex id").map(|v| (v, p))
                        })?;
                        c.finish()?;
                        check_cycle_elements(&cycles)?;
                        AutDecl::Perm {
                            cycles: cycles.into_iter().map(|(c, _)| c).collect(),
                            pos,
                        }
                    }
                    Kind::Periodic => {
                        c.keyword("shift")?;
                        let shift = c.integer("integer shift")?;
                        c.keyword("perm")?;
                        let cycles = c.cycles(|c| c.name("orbit name"))?;
                        c.finish()?;
                        check_cycle_elements(&cycles)?;
                        for (items, positions) in &cycles {
                            for (x, p) in items.iter().zip(positions) {
                                orbit_refs.push((x.clone(), *p));
                            }
                        }
                        AutDecl::Shift {
                            shift,
                            cycles: cycles.into_iter().map(|(c, _)| c).collect(),
                            pos,
                        }
                    }
                };
                d.aut = Some(aut);
            }
            _ => return Err(Cursor { at: start, ..c }.err(expected)),
        }
    }
    let Some(doc) = doc else {
        return Err(ParseError::Syntax {
            line: last_line,
            col: 1,
            expected: "header `cxc 1 finite` or `cxc 1 periodic`".to_string(),
        });
    };
    if let Some((name, pos)) = orbit_refs.into_iter().find(|(n, _)| !orbit_names.contains(n)) {
        return Err(ParseError::UnknownOrbit {
            line: pos.line,
            col: pos.col,
            name,
        });
    }
    Ok(doc)
}
