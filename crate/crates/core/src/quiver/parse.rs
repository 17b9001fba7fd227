use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraElement, DimensionVector, Path, Presentation, Quiver, QuiverError, Relation};
use crate::poly::Coeff;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept trivial paths `e_<vertex>` as relation terms.
    pub allow_trivial_relations: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Vertices,
    Arrows,
    Dims,
    Frozen,
    Relations,
}

fn syntax(line: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Syntax {
        line,
        message: message.into(),
    }
}

fn at(line: usize) -> impl Fn(QuiverError) -> QuiverError {
    move |e| match e {
        e @ (QuiverError::Syntax { .. } | QuiverError::AtLine { .. }) => e,
        e => QuiverError::AtLine {
            line,
            error: Box::new(e),
        },
    }
}

/// Parses the line-oriented quiver file format:
///
/// ```text
/// [vertices] 0 1
/// [arrows]
/// c: 0 -> 1
/// [dims]
/// 0 = 2
/// [K] 1
/// [relations]
/// g1 = f*c - e*d
/// ```
///
/// Relation words read right to left: `f*c` is `c` followed by `f`.
pub fn parse_presentation(text: &str, opts: &ParseOptions) -> Result<Presentation, QuiverError> {
    let mut section = Section::None;
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut arrows: Vec<(usize, String, String, String)> = Vec::new();
    let mut dims: Vec<(usize, String, u32)> = Vec::new();
    let mut frozen: Vec<(usize, String)> = Vec::new();
    let mut relations: Vec<(usize, String, String)> = Vec::new();
    let mut seen_sections = BTreeSet::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let mut body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let close = rest
                .find(']')
                .ok_or_else(|| syntax(line, "unclosed section header"))?;
            let name = rest[..close].trim();
            section = match name {
                "vertices" => Section::Vertices,
                "arrows" => Section::Arrows,
                "dims" => Section::Dims,
                "K" => Section::Frozen,
                "relations" => Section::Relations,
                other => return Err(syntax(line, format!("unknown section `[{other}]`"))),
            };
            if !seen_sections.insert(name.to_string()) {
                return Err(syntax(line, format!("repeated section `[{name}]`")));
            }
            body = rest[close + 1..].trim();
            if body.is_empty() {
                continue;
            }
        }
        match section {
            Section::None => return Err(syntax(line, "content before the first section header")),
            Section::Vertices => vertices.extend(split_ids(body).map(|v| (line, v))),
            Section::Frozen => frozen.extend(split_ids(body).map(|v| (line, v))),
            Section::Arrows => {
                let (name, ends) = body
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `name: tail -> head`"))?;
                let (tail, head) = ends
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "expected `name: tail -> head`"))?;
                let name = name.trim();
                if !valid_arrow_name(name) {
                    return Err(syntax(line, format!("invalid arrow name `{name}`")));
                }
                arrows.push((
                    line,
                    name.to_string(),
                    tail.trim().to_string(),
                    head.trim().to_string(),
                ));
            }
            Section::Dims => {
                let (v, n) = body
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `vertex = integer`"))?;
                let n: u32 = n
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid dimension `{}`", n.trim())))?;
                dims.push((line, v.trim().to_string(), n));
            }
            Section::Relations => {
                let (name, rhs) = body
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `name = term (± term)*`"))?;
                relations.push((line, name.trim().to_string(), rhs.trim().to_string()));
            }
        }
    }

    for (n, (line, v)) in vertices.iter().enumerate() {
        if vertices[..n].iter().any(|(_, w)| w == v) {
            return Err(at(*line)(QuiverError::Duplicate(v.clone())));
        }
    }
    let mut quiver = Quiver::new(vertices.into_iter().map(|(_, v)| v), std::iter::empty())?;
    for (line, name, tail, head) in arrows {
        let t = quiver.vertex(&tail).map_err(at(line))?;
        let h = quiver.vertex(&head).map_err(at(line))?;
        quiver.push_arrow(name, t, h).map_err(at(line))?;
    }

    let mut dim_values: Vec<Option<u32>> = vec![None; quiver.num_vertices()];
    for (line, v, n) in dims {
        let id = quiver.vertex(&v).map_err(at(line))?;
        if dim_values[id.0].replace(n).is_some() {
            return Err(syntax(line, format!("dimension of `{v}` given twice")));
        }
    }
    let mut dv = Vec::with_capacity(dim_values.len());
    for (k, d) in dim_values.into_iter().enumerate() {
        match d {
            Some(d) => dv.push(d),
            None => {
                return Err(QuiverError::Invalid(format!(
                    "missing dimension for vertex `{}`",
                    quiver.vertex_name(super::VertexId(k))
                )))
            }
        }
    }
    let dims = DimensionVector::new(&quiver, dv)?;

    let mut k_set = BTreeSet::new();
    for (line, v) in frozen {
        k_set.insert(quiver.vertex(&v).map_err(at(line))?);
    }

    let mut rels = Vec::with_capacity(relations.len());
    for (line, name, rhs) in relations {
        if rels.iter().any(|r: &Relation| r.name == name) {
            return Err(syntax(line, format!("duplicate relation name `{name}`")));
        }
        let element = parse_relation(&quiver, &name, &rhs, opts).map_err(at(line))?;
        rels.push(Relation { name, element });
    }

    Presentation::new(quiver, dims, k_set, rels)
}

fn split_ids(body: &str) -> impl Iterator<Item = String> + '_ {
    body.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
}

fn valid_arrow_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if !c.is_ascii_digit())
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !"+-*:=#[]/;,".contains(c))
}

#[derive(Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Num(Coeff),
    Ident(String),
}

fn tokenize(rhs: &str) -> Result<Vec<Tok>, QuiverError> {
    let chars: Vec<char> = rhs.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |msg: String| QuiverError::Invalid(msg);
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Tok::Plus);
            i += 1;
        } else if c == '-' || c == '−' {
            out.push(Tok::Minus);
            i += 1;
        } else if c == '*' {
            out.push(Tok::Star);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let value = match s.split_once('/') {
                None => Coeff::from_integer(
                    s.parse::<BigInt>()
                        .map_err(|_| bad(format!("bad coefficient `{s}`")))?,
                ),
                Some((p, q)) => {
                    let p: BigInt = p
                        .parse()
                        .map_err(|_| bad(format!("bad coefficient `{s}`")))?;
                    let q: BigInt = q
                        .parse()
                        .map_err(|_| bad(format!("bad coefficient `{s}`")))?;
                    if q.is_zero() {
                        return Err(bad(format!("zero denominator in `{s}`")));
                    }
                    Coeff::new(p, q)
                }
            };
            out.push(Tok::Num(value));
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !"+-−*".contains(chars[i]) {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        }
    }
    Ok(out)
}

fn parse_relation(
    q: &Quiver,
    name: &str,
    rhs: &str,
    opts: &ParseOptions,
) -> Result<AlgebraElement, QuiverError> {
    let toks = tokenize(rhs)?;
    let mut terms: Vec<(Path, Coeff)> = Vec::new();
    let mut pos = 0;
    let one = Coeff::from_integer(1.into());
    while pos < toks.len() {
        let mut sign = one.clone();
        match toks[pos] {
            Tok::Plus => pos += 1,
            Tok::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if !terms.is_empty() => {
                return Err(QuiverError::Invalid(format!(
                    "expected `+` or `-` in `{rhs}`"
                )))
            }
            _ => {}
        }
        let mut coeff = sign;
        if let Some(Tok::Num(c)) = toks.get(pos) {
            coeff *= c;
            pos += 1;
            if toks.get(pos) == Some(&Tok::Star) {
                pos += 1;
            }
        }
        let mut names = Vec::new();
        loop {
            match toks.get(pos) {
                Some(Tok::Ident(n)) => {
                    names.push(n.clone());
                    pos += 1;
                }
                _ => {
                    return Err(QuiverError::Invalid(format!(
                        "expected an arrow word in `{rhs}`"
                    )))
                }
            }
            if toks.get(pos) == Some(&Tok::Star) {
                pos += 1;
            } else {
                break;
            }
        }
        let path =
            if names.len() == 1 && q.arrow_id(&names[0]).is_err() && names[0].starts_with("e_") {
                if !opts.allow_trivial_relations {
                    return Err(QuiverError::TrivialInRelation(name.to_string()));
                }
                Path::trivial(q.vertex(&names[0][2..])?)
            } else {
                let mut ids = Vec::with_capacity(names.len());
                for n in names.iter().rev() {
                    ids.push(q.arrow_id(n)?);
                }
                Path::from_arrows(q, ids)?
            };
        terms.push((path, coeff));
    }
    let Some((first, _)) = terms.first() else {
        return Err(QuiverError::Invalid(format!(
            "relation `{name}` has no terms"
        )));
    };
    let (head, tail) = (first.head(), first.tail());
    AlgebraElement::new(head, tail, terms).map_err(|e| match e {
        QuiverError::MixedBigrading(_) => QuiverError::MixedBigrading(format!(" `{name}`")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::A1;
    use super::*;

    #[test]
    fn parses_the_a1_file() {
        let p = parse_presentation(A1, &ParseOptions::default()).unwrap();
        assert_eq!(p.quiver.num_vertices(), 2);
        assert_eq!(p.quiver.num_arrows(), 4);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0].element.display(&p.quiver), "fc - ed");
        assert_eq!(p.relations[1].element.display(&p.quiver), "de - cf");
        assert_eq!(p.dims.as_slice(), &[2, 2]);
        assert_eq!(
            p.frozen
                .iter()
                .map(|v| p.quiver.vertex_name(*v))
                .collect::<Vec<_>>(),
            vec!["1"]
        );
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn empty_relations_give_the_free_path_algebra() {
        let text = A1.split("[relations]").next().unwrap().to_string() + "[relations]\n";
        let p = parse_presentation(&text, &ParseOptions::default()).unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn mixed_bigrading_is_rejected() {
        let text =
            A1.split("[relations]").next().unwrap().to_string() + "[relations]\ng = f*c - d\n";
        let err = parse_presentation(&text, &ParseOptions::default()).unwrap_err();
        assert!(matches!(err.root(), QuiverError::MixedBigrading(_)));
        assert!(
            err.to_string().contains("mixed bigrading in relation"),
            "{err}"
        );
    }

    #[test]
    fn error_paths_report_lines() {
        let base = "[vertices] 0 1\n[arrows]\nc: 0 -> 1\n[dims]\n0 = 1\n1 = 1\n";
        let cases = [
            (format!("{base}[relations]\ng = c*c\n"), 8),
            (format!("{base}[relations]\ng = z\n"), 8),
            (format!("{base}[K] 7\n"), 7),
            ("[vertices] 0\n[arrows]\nc 0 -> 0\n".to_string(), 3),
        ];
        for (text, line) in cases {
            match parse_presentation(&text, &ParseOptions::default()).unwrap_err() {
                QuiverError::Syntax { line: l, .. } | QuiverError::AtLine { line: l, .. } => {
                    assert_eq!(l, line, "{text}")
                }
                other => panic!("no line information: {other:?}"),
            }
        }
        let missing_dim = "[vertices] 0 1\n[dims]\n0 = 1\n";
        assert!(parse_presentation(missing_dim, &ParseOptions::default()).is_err());
    }

    #[test]
    fn coefficients_and_trivial_terms() {
        let base = "[vertices] 0\n[arrows]\na: 0 -> 0\n[dims]\n0 = 2\n[relations]\n";
        let p = parse_presentation(
            &format!("{base}g = 2*a*a - 1/3 a\n"),
            &ParseOptions::default(),
        )
        .unwrap();
        assert_eq!(p.relations[0].element.display(&p.quiver), "-1/3*a + 2*aa");
        let idem = format!("{base}g = a*a - e_0\n");
        let err = parse_presentation(&idem, &ParseOptions::default()).unwrap_err();
        assert!(matches!(err.root(), QuiverError::TrivialInRelation(_)));
        let opts = ParseOptions {
            allow_trivial_relations: true,
        };
        let p = parse_presentation(&idem, &opts).unwrap();
        assert_eq!(p.relations[0].element.display(&p.quiver), "-e_0 + aa");
    }
}
