//! Human-readable output.

use idemgen::green::GreenData;
use serde_json::Value;

/// Top-level fields as aligned `key  value` lines.
pub fn text(v: &Value) -> String {
    let Value::Object(map) = v else {
        return format!("{}\n", scalar(v));
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, x) in map {
        out.push_str(&format!("{k:<width$}  {}\n", scalar(x)));
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn green(g: &GreenData) -> String {
    let mut out = format!("{} elements, {} D-classes\n", g.n, g.d_classes.len());
    for (k, d) in g.d_classes.iter().enumerate() {
        let names: Vec<&str> = d.iter().map(|&x| g.names[x].as_str()).collect();
        let idems: Vec<&str> = g.d_idempotents[k].iter().map(|&x| g.names[x].as_str()).collect();
        out.push_str(&format!("D{k:<3} {{{}}}  idempotents {{{}}}\n", names.join(", "), idems.join(", ")));
    }
    for (a, b) in &g.covers {
        out.push_str(&format!("D{a} > D{b}\n"));
    }
    out
}

pub fn demo(v: &Value) -> String {
    let word = |k: &str| match &v[k] {
        Value::Array(xs) if xs.is_empty() => "1".to_string(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(" "),
        _ => "-".into(),
    };
    let mut out = format!("w      {}\nin G   {}\nequal  {}\n", word("word"), word("g_word"), v["equal"]);
    if v["b_word"].is_array() {
        out.push_str(&format!("B-word {}\n", word("b_word")));
    }
    if let Some(chain) = v["chain"].as_object() {
        let start = &chain["start"];
        out.push_str(&format!("       {}  {}\n", scalar(&start["u"]), scalar(&start["v"])));
        for s in chain["steps"].as_array().into_iter().flatten() {
            out.push_str(&format!(
                "{:<11} {:<6} {}  {}\n",
                scalar(&s["kind"]),
                scalar(&s["via"]),
                scalar(&s["u"]),
                scalar(&s["v"])
            ));
        }
    }
    out
}
