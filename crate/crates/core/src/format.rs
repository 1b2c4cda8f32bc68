//! Text formats for algebras (`.alg`) and modules (`.mod`).
//!
//! Algebra files are line oriented, `#` starts a comment:
//!
//! ```text
//! field GF(5)
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! relation 1 a*b + 4 c*d
//! order 2 < 1
//! bound 12
//! end
//! ```
//!
//! Module files give a dimension per vertex and one matrix per arrow, one row
//! per basis vector of the source space:
//!
//! ```text
//! dim 1 1
//! dim 2 1
//! map a
//! 1
//! ```

use std::sync::Arc;

use crate::bqa::{build_algebra, Algebra, Presentation, DEFAULT_PATH_BOUND};
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Field, Scalar};
use crate::hw::WeightPoset;
use crate::rep::Representation;

/// A parsed algebra file: the presentation and the declared weight order.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub presentation: Presentation,
    /// Pairs `(a, b)` meaning `a < b`, as vertex indices.
    pub order: Vec<(usize, usize)>,
}

impl AlgebraFile {
    pub fn build(&self) -> Result<Arc<Algebra>> {
        Ok(Arc::new(build_algebra(&self.presentation)?))
    }

    pub fn poset(&self) -> Result<WeightPoset> {
        WeightPoset::new(self.presentation.vertices.clone(), &self.order)
    }
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// `GF(p)` or `QQ`.
pub fn parse_field(text: &str) -> Option<Field> {
    if text == "QQ" {
        return Some(Field::Rationals);
    }
    let p = text.strip_prefix("GF(")?.strip_suffix(')')?;
    Field::prime(p.parse().ok()?).ok()
}

/// Parses a linear combination `c1 p1 + c2 p2 - p3 ...`; a missing
/// coefficient means one.
fn parse_lincomb(p: &Presentation, text: &str) -> std::result::Result<Vec<(Scalar, Vec<usize>)>, String> {
    let field = p.field;
    let mut terms = Vec::new();
    let mut sign = field.one();
    let mut coeff: Option<Scalar> = None;
    let mut expect_term = true;
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" if !expect_term => {
                sign = if tok == "-" {
                    field.neg(&field.one())
                } else {
                    field.one()
                };
                expect_term = true;
            }
            _ if !expect_term => return Err(format!("expected `+` or `-` before `{tok}`")),
            _ if tok.starts_with(|c: char| c.is_ascii_digit() || c == '-') => {
                if coeff.is_some() {
                    return Err(format!("two coefficients in a row at `{tok}`"));
                }
                coeff = Some(field.parse_scalar(tok).map_err(|e| e.to_string())?);
            }
            _ => {
                let word = tok
                    .split('*')
                    .map(|a| p.arrow_index(a).map_err(|e| e.to_string()))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let c = field.mul(&sign, &coeff.take().unwrap_or_else(|| field.one()));
                terms.push((c, word));
                sign = field.one();
                expect_term = false;
            }
        }
    }
    if expect_term {
        return Err("relation ends without a path".into());
    }
    Ok(terms)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    parse_algebra_with_default(text, None)
}

/// As [`parse_algebra`]; `default_field` is used when the file has no `field` line.
pub fn parse_algebra_with_default(text: &str, default_field: Option<Field>) -> Result<AlgebraFile> {
    let mut pres: Option<Presentation> = None;
    let mut order = Vec::new();
    let mut ended = false;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(Error::parse(ln, "content after `end`"));
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if kw == "field" {
            if pres.is_some() {
                return Err(Error::parse(ln, "`field` must come first and only once"));
            }
            let f = parse_field(rest).ok_or_else(|| Error::parse(ln, format!("unknown field `{rest}`")))?;
            pres = Some(Presentation::new(f));
            continue;
        }
        let p = match (&mut pres, default_field) {
            (Some(p), _) => p,
            (None, Some(f)) => pres.insert(Presentation::new(f)),
            (None, None) => return Err(Error::parse(ln, "missing `field` line")),
        };
        let args: Vec<&str> = rest.split_whitespace().collect();
        let wrap = |e: Error| Error::parse(ln, e.to_string());
        match kw {
            "vertex" => {
                if args.len() != 1 {
                    return Err(Error::parse(ln, "usage: vertex <label>"));
                }
                p.add_vertex(args[0]).map_err(wrap)?;
            }
            "arrow" => {
                if args.len() != 3 {
                    return Err(Error::parse(ln, "usage: arrow <name> <source> <target>"));
                }
                if !args[0].starts_with(|c: char| c.is_alphabetic() || c == '_') || args[0].contains('*') {
                    return Err(Error::parse(ln, format!("bad arrow name `{}`", args[0])));
                }
                p.add_arrow(args[0], args[1], args[2]).map_err(wrap)?;
            }
            "relation" => {
                let terms = parse_lincomb(p, rest).map_err(|m| Error::parse(ln, m))?;
                p.add_relation(terms).map_err(wrap)?;
            }
            "order" => {
                if args.len() != 3 || args[1] != "<" {
                    return Err(Error::parse(ln, "usage: order <a> < <b>"));
                }
                let a = p.vertex_index(args[0]).map_err(wrap)?;
                let b = p.vertex_index(args[2]).map_err(wrap)?;
                order.push((a, b));
            }
            "bound" => {
                let b: usize = rest
                    .parse()
                    .ok()
                    .filter(|&b| b > 0)
                    .ok_or_else(|| Error::parse(ln, format!("bad bound `{rest}`")))?;
                p.bound = b;
            }
            "end" => ended = true,
            _ => return Err(Error::parse(ln, format!("unknown keyword `{kw}`"))),
        }
    }
    let presentation = pres.ok_or_else(|| Error::parse(last.max(1), "empty algebra file"))?;
    if presentation.vertices.is_empty() {
        return Err(Error::parse(last.max(1), "no vertices"));
    }
    presentation
        .validate()
        .map_err(|e| Error::parse(last.max(1), e.to_string()))?;
    let file = AlgebraFile { presentation, order };
    file.poset().map_err(|e| Error::parse(last.max(1), e.to_string()))?;
    Ok(file)
}

pub fn print_algebra(p: &Presentation, order: &[(usize, usize)]) -> String {
    let mut out = format!("field {}\n", p.field);
    for v in &p.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in &p.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.name, p.vertices[a.source], p.vertices[a.target]
        ));
    }
    for r in &p.relations {
        out.push_str(&format!("relation {}\n", p.format_relation(r)));
    }
    for &(a, b) in order {
        out.push_str(&format!("order {} < {}\n", p.vertices[a], p.vertices[b]));
    }
    if p.bound != DEFAULT_PATH_BOUND {
        out.push_str(&format!("bound {}\n", p.bound));
    }
    out.push_str("end\n");
    out
}

/// Parses a module over `alg`; the relations are checked on load.
pub fn parse_module(alg: &Arc<Algebra>, text: &str) -> Result<Representation> {
    let field = alg.field();
    let n = alg.num_vertices();
    let mut dims: Vec<Option<usize>> = vec![None; n];
    let mut maps: Vec<Option<ExactMatrix>> = vec![None; alg.arrows().len()];
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let last = text.lines().count().max(1);
    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        let args: Vec<&str> = line.split_whitespace().collect();
        match args[0] {
            "dim" => {
                if args.len() != 3 {
                    return Err(Error::parse(ln, "usage: dim <vertex> <n>"));
                }
                let v = alg.vertex(args[1]).map_err(|e| Error::parse(ln, e.to_string()))?;
                let d = args[2]
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad dimension `{}`", args[2])))?;
                if dims[v].replace(d).is_some() {
                    return Err(Error::parse(ln, format!("dimension at `{}` given twice", args[1])));
                }
                i += 1;
            }
            "map" => {
                if args.len() != 2 {
                    return Err(Error::parse(ln, "usage: map <arrow>"));
                }
                let a = alg
                    .presentation()
                    .arrow_index(args[1])
                    .map_err(|e| Error::parse(ln, e.to_string()))?;
                let arrow = &alg.arrows()[a];
                let (Some(r), Some(c)) = (dims[arrow.source], dims[arrow.target]) else {
                    return Err(Error::parse(ln, "dimensions must be declared before maps"));
                };
                let mut m = ExactMatrix::zeros(field, r, c);
                for row in 0..r {
                    i += 1;
                    let Some(&(rl, text)) = lines.get(i) else {
                        return Err(Error::parse(last, format!("map `{}` is missing rows", args[1])));
                    };
                    let entries: Vec<&str> = text.split_whitespace().collect();
                    if entries.len() != c {
                        return Err(Error::parse(
                            rl,
                            format!("expected {c} entries, found {}", entries.len()),
                        ));
                    }
                    for (col, e) in entries.iter().enumerate() {
                        let s = field.parse_scalar(e).map_err(|e| Error::parse(rl, e.to_string()))?;
                        m.set(row, col, &s);
                    }
                }
                if maps[a].replace(m).is_some() {
                    return Err(Error::parse(ln, format!("map `{}` given twice", args[1])));
                }
                i += 1;
            }
            "end" => {
                if i + 1 != lines.len() {
                    return Err(Error::parse(lines[i + 1].0, "content after `end`"));
                }
                i += 1;
            }
            kw => return Err(Error::parse(ln, format!("unknown keyword `{kw}`"))),
        }
    }
    if lines.is_empty() {
        return Err(Error::parse(1, "empty module file"));
    }
    let dims: Vec<usize> = dims.into_iter().map(|d| d.unwrap_or(0)).collect();
    let maps = alg
        .arrows()
        .iter()
        .zip(maps)
        .map(|(a, m)| m.unwrap_or_else(|| ExactMatrix::zeros(field, dims[a.source], dims[a.target])))
        .collect();
    Representation::new(alg.clone(), dims, maps)
}

pub fn print_module(m: &Representation) -> String {
    let alg = m.algebra();
    let mut out = String::new();
    for (v, d) in m.dims().iter().enumerate() {
        out.push_str(&format!("dim {} {}\n", alg.vertex_label(v), d));
    }
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let x = m.map(a);
        if x.rows() == 0 || x.cols() == 0 {
            continue;
        }
        out.push_str(&format!("map {}\n", arrow.name));
        for r in 0..x.rows() {
            let row: Vec<String> = (0..x.cols()).map(|c| x.get(r, c).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "field GF(5)\nvertex 1\nvertex 2\narrow a 1 2\norder 2 < 1\nend\n";

    #[test]
    fn algebra_round_trip() {
        let text = "# comment\nfield QQ\nvertex x\nvertex y\narrow a x y\narrow b y x\n\
                    relation a*b\nrelation 2 b*a - 1/2 b*a\nbound 6\nend\n";
        let f = parse_algebra(text).unwrap();
        let printed = print_algebra(&f.presentation, &f.order);
        let g = parse_algebra(&printed).unwrap();
        assert_eq!(f.presentation, g.presentation);
        assert_eq!(printed, print_algebra(&g.presentation, &g.order));
        assert_eq!(g.presentation.bound, 6);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_algebra(""), Err(Error::Parse { line: 1, .. })));
        let e = parse_algebra("field GF(5)\nvertex 1\narrow a 1 9\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_algebra("field GF(4)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_algebra("field GF(5)\nvertex 1\nfrobnicate\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_algebra("field GF(5)\nvertex 1\nvertex 2\norder 1 < 2\norder 2 < 1\nend\n").unwrap_err();
        assert!(e.to_string().contains("cyclic"), "{e}");
    }

    #[test]
    fn module_round_trip_and_relation_check() {
        let f = parse_algebra(A2).unwrap();
        let alg = f.build().unwrap();
        let m = parse_module(&alg, "dim 1 1\ndim 2 1\nmap a\n3\n").unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        let again = parse_module(&alg, &print_module(&m)).unwrap();
        assert_eq!(m, again);
        let e = parse_module(&alg, "dim 1 1\ndim 2 1\nmap a\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));

        let d = parse_algebra("field GF(5)\nvertex 1\narrow x 1 1\nrelation x*x\nend\n").unwrap();
        let dual = d.build().unwrap();
        let e = parse_module(&dual, "dim 1 2\nmap x\n1 0\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::RelationViolated { .. }), "{e}");
        assert!(e.to_string().contains("x*x"));
    }
}
