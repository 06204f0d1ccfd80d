use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{join_key, BilinearTable, EngineError, LeafVec, Presentation, SparseMatrix};
use crate::expr::{parse, Node};
use crate::graphs::{ColorSet, RecolorMap};
use crate::semiring::Semiring;

fn fmt_err(msg: impl Into<String>) -> EngineError {
    EngineError::Format(msg.into())
}

fn vec_json<S: Semiring>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn table_json<S: Semiring>(t: &BilinearTable<S>) -> Value {
    let m = t.m();
    let mut cells = Vec::new();
    for p in 0..m {
        for q in 0..m {
            let cell = t.cell(p, q);
            if cell.iter().any(|x| !x.is_zero()) {
                cells.push(json!([p, q, vec_json(&cell)]));
            }
        }
    }
    Value::Array(cells)
}

/// Writes the presentation as a single JSON object. Table cells that are
/// entirely zero are omitted.
pub fn presentation_to_json<S: Semiring>(p: &Presentation<S>) -> String {
    let leaf: Vec<Value> = p
        .leaf
        .iter()
        .map(|(c, l)| {
            let mut o = Map::new();
            o.insert("colors".into(), json!(c.iter().collect::<Vec<_>>()));
            o.insert("vec".into(), vec_json(&l.base));
            if let Some(d) = &l.dir {
                o.insert("dir".into(), vec_json(d));
            }
            Value::Object(o)
        })
        .collect();
    let join: Map<String, Value> = p.join_tab.iter().map(|((i, j), t)| (format!("{i},{j}"), table_json(t))).collect();
    let recolor: Map<String, Value> = p
        .recolor_tab
        .iter()
        .map(|(map, mat)| (map.to_string(), Value::Array(mat.to_dense().iter().map(|r| vec_json(r)).collect())))
        .collect();
    let doc = json!({
        "k": p.k,
        "m": p.m,
        "semiring": S::descriptor().name,
        "weight_default": p.default_weight.to_string(),
        "leaf": leaf,
        "union": table_json(&p.union_tab),
        "join": join,
        "recolor": recolor,
        "out": vec_json(&p.out),
    });
    doc.to_string()
}

/// The `semiring` field of a presentation file.
pub fn presentation_semiring(text: &str) -> Result<String, EngineError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))?;
    doc.get("semiring").and_then(Value::as_str).map(str::to_string).ok_or_else(|| fmt_err("missing `semiring`"))
}

fn value<S: Semiring>(v: &Value) -> Result<S, EngineError> {
    let s = v.as_str().ok_or_else(|| fmt_err(format!("value {v} is not a string")))?;
    if matches!(s.trim(), "+inf" | "inf") {
        return Err(fmt_err("top elements are not allowed"));
    }
    S::parse_value(s).map_err(|e| fmt_err(format!("bad {} value `{}`", e.carrier, e.text)))
}

fn vector<S: Semiring>(v: &Value, m: usize) -> Result<Vec<S>, EngineError> {
    let items = v.as_array().ok_or_else(|| fmt_err("expected an array of values"))?;
    if items.len() != m {
        return Err(fmt_err(format!("vector of length {} where m = {m}", items.len())));
    }
    items.iter().map(value).collect()
}

fn index(v: &Value, m: usize) -> Result<usize, EngineError> {
    match v.as_u64() {
        Some(i) if (i as usize) < m => Ok(i as usize),
        _ => Err(fmt_err(format!("index {v} out of range 0..{m}"))),
    }
}

fn table<S: Semiring>(v: &Value, m: usize, what: &str) -> Result<BilinearTable<S>, EngineError> {
    let cells = v.as_array().ok_or_else(|| fmt_err(format!("`{what}` must be an array")))?;
    let mut dense: BTreeMap<(usize, usize), Vec<S>> = BTreeMap::new();
    for cell in cells {
        let parts = cell.as_array().filter(|a| a.len() == 3).ok_or_else(|| fmt_err(format!("`{what}` cells are [p, q, vector]")))?;
        let (p, q) = (index(&parts[0], m)?, index(&parts[1], m)?);
        if dense.insert((p, q), vector(&parts[2], m)?).is_some() {
            return Err(fmt_err(format!("`{what}` lists cell ({p},{q}) twice")));
        }
    }
    let tab = BilinearTable::from_fn(m, |p, q| {
        dense.get(&(p, q)).map(|v| v.iter().cloned().enumerate().collect()).unwrap_or_default()
    });
    if !tab.is_symmetric() {
        return Err(fmt_err(format!("`{what}` table is not symmetric")));
    }
    Ok(tab)
}

fn colors(v: &Value, k: usize) -> Result<ColorSet, EngineError> {
    let items = v.as_array().ok_or_else(|| fmt_err("`colors` must be an array"))?;
    let mut cs = Vec::new();
    for c in items {
        match c.as_u64() {
            Some(c) if c >= 1 && c as usize <= k => cs.push(c as usize),
            _ => return Err(fmt_err(format!("color {c} out of range 1..={k}"))),
        }
    }
    Ok(ColorSet::from_colors(cs))
}

fn recolor_map(name: &str) -> Result<RecolorMap, EngineError> {
    let e = parse(&format!("(r {{{name}}} (v {{}}))")).map_err(|e| fmt_err(format!("recoloring `{name}`: {e}")))?;
    match &e.nodes()[e.root()] {
        Node::Recolor { map, .. } => Ok(map.clone()),
        _ => Ok(RecolorMap::identity()),
    }
}

pub fn presentation_from_json<S: Semiring>(text: &str) -> Result<Presentation<S>, EngineError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))?;
    let field = |name: &str| doc.get(name).ok_or_else(|| fmt_err(format!("missing `{name}`")));
    let size = |name: &str| field(name)?.as_u64().map(|x| x as usize).ok_or_else(|| fmt_err(format!("`{name}` must be a number")));
    let (k, m) = (size("k")?, size("m")?);
    let semiring = field("semiring")?.as_str().unwrap_or_default();
    if semiring != S::descriptor().name {
        return Err(fmt_err(format!("semiring `{semiring}` where `{}` was expected", S::descriptor().name)));
    }
    let default_weight = match doc.get("weight_default") {
        Some(v) => value(v)?,
        None => S::one(),
    };

    let mut leaf = BTreeMap::new();
    for entry in field("leaf")?.as_array().ok_or_else(|| fmt_err("`leaf` must be an array"))? {
        let c = colors(entry.get("colors").ok_or_else(|| fmt_err("leaf without `colors`"))?, k)?;
        let base = vector(entry.get("vec").ok_or_else(|| fmt_err("leaf without `vec`"))?, m)?;
        let dir = entry.get("dir").map(|d| vector(d, m)).transpose()?;
        if leaf.insert(c, LeafVec { base, dir }).is_some() {
            return Err(fmt_err(format!("leaf {c} listed twice")));
        }
    }

    let union_tab = table(field("union")?, m, "union")?;
    let mut join_tab = BTreeMap::new();
    if let Some(joins) = doc.get("join") {
        for (key, t) in joins.as_object().ok_or_else(|| fmt_err("`join` must be an object"))? {
            let pair = key.split_once(',').and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)));
            let (i, j) = match pair {
                Some((i, j)) if i != j && (1..=k).contains(&i) && (1..=k).contains(&j) => (i, j),
                _ => return Err(fmt_err(format!("bad join key `{key}`"))),
            };
            let tab = table(t, m, key)?;
            if let Some(prev) = join_tab.insert(join_key(i, j), tab.clone()) {
                if prev != tab {
                    return Err(fmt_err(format!("join ({i},{j}) disagrees with ({j},{i})")));
                }
            }
        }
    }

    let mut recolor_tab = BTreeMap::new();
    if let Some(maps) = doc.get("recolor") {
        for (name, rows) in maps.as_object().ok_or_else(|| fmt_err("`recolor` must be an object"))? {
            let map = recolor_map(name)?;
            let rows = rows.as_array().filter(|r| r.len() == m).ok_or_else(|| fmt_err(format!("recoloring `{name}` needs {m} rows")))?;
            let dense = rows.iter().map(|r| vector(r, m)).collect::<Result<Vec<_>, _>>()?;
            recolor_tab.insert(map, SparseMatrix::from_dense(&dense));
        }
    }

    let out = vector(field("out")?, m)?;
    Ok(Presentation { k, m, default_weight, leaf, union_tab, join_tab, recolor_tab, out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{eval_presentation, independent_set_presentation, mis_presentation};
    use crate::expr::{generate, Family, FamilySpec};
    use crate::semiring::{Nat, TropicalValue};

    #[test]
    fn round_trip_preserves_evaluation() {
        let e = generate(&FamilySpec::cograph(7, 3)).unwrap();
        let p4 = generate(&FamilySpec::new(Family::Path, 4)).unwrap();
        let alphabet: Vec<_> = e.recolor_alphabet().into_iter().chain(p4.recolor_alphabet()).collect();
        let p = mis_presentation(3, &alphabet).unwrap();
        let text = presentation_to_json(&p);
        assert_eq!(presentation_semiring(&text).unwrap(), "maxplus");
        let back = presentation_from_json::<TropicalValue>(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(presentation_to_json(&back), text);
        for x in [&e, &p4] {
            assert_eq!(eval_presentation(x, &back).unwrap(), eval_presentation(x, &p).unwrap());
        }
        let n = independent_set_presentation::<Nat>(2, &alphabet[..1]).unwrap();
        assert_eq!(presentation_from_json::<Nat>(&presentation_to_json(&n)).unwrap(), n);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let p = mis_presentation(1, &[]).unwrap();
        let text = presentation_to_json(&p);
        assert!(presentation_from_json::<Nat>(&text).is_err());
        let top = text.replacen("\"0\"", "\"+inf\"", 1);
        assert!(matches!(presentation_from_json::<TropicalValue>(&top), Err(EngineError::Format(_))));
        let mut doc: Value = serde_json::from_str(&text).unwrap();
        doc["union"] = json!([[0, 1, ["0", "-inf"]]]);
        assert!(presentation_from_json::<TropicalValue>(&doc.to_string()).is_err());
        doc["union"] = json!([[0, 2, ["0", "-inf"]]]);
        assert!(presentation_from_json::<TropicalValue>(&doc.to_string()).is_err());
        assert!(presentation_from_json::<TropicalValue>("{").is_err());
    }
}
