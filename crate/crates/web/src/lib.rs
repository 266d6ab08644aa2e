//! Browser entry points. Each returns a JSON string; the plain functions are
//! what the bindings wrap, so they also run natively.

use homext::annulus::ArcDiagram;
use homext::hequiver::{build_algebraic, build_geometric, count_linear_extensions, is_exceptional_set};
use homext::hom::{dim_ext, dim_hom};
use homext::io::{check_range, format_collection, parse_collection, parse_module_arg, report};
use homext::render::render_svg;
use homext::twist::{twist, TwistWord};
use homext::{Orientation, StringModule};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn quiver(s: &str) -> Result<Orientation, String> {
    s.trim().parse().map_err(|e| format!("quiver {s:?}: {e}"))
}

fn collection(q: &Orientation, text: &str) -> Result<Vec<StringModule>, String> {
    let c = parse_collection(text).map_err(|e| e.to_string())?;
    check_range(q, &c.modules).map_err(|e| e.to_string())?;
    Ok(c.modules)
}

fn module(q: &Orientation, s: &str) -> Result<StringModule, String> {
    let m = parse_module_arg(s.trim()).map_err(|_| format!("cannot parse module {s:?}"))?;
    check_range(q, &[m]).map_err(|e| e.to_string())?;
    Ok(m)
}

/// SVG of the arc diagram plus the Hom-Ext report of the collection.
pub fn diagram_report(eps: &str, text: &str) -> Result<String, String> {
    let q = quiver(eps)?;
    let ms = collection(&q, text)?;
    let svg = render_svg(&ArcDiagram::from_modules(&q, &ms), &[]);
    let exceptional = is_exceptional_set(&q, &ms);
    let h = if exceptional { build_geometric(&q, &ms) } else { build_algebraic(&q, &ms) }.map_err(|e| e.to_string())?;
    let arrows: Vec<_> = h
        .quiver
        .arrows
        .iter()
        .map(|a| json!({"from": h.quiver.vertices[a.src], "to": h.quiver.vertices[a.tgt], "degree": a.degree}))
        .collect();
    let relations: Vec<_> = h.quiver.relations.iter().map(|&(x, y)| [x, y]).collect();
    let orderings = if exceptional { count_linear_extensions(&h).ok().map(|c| c.to_string()) } else { None };
    Ok(report(
        "render",
        &json!({"svg": svg, "exceptional": exceptional, "arrows": arrows, "relations": relations, "orderings": orderings}),
    ))
}

pub fn dims(eps: &str, m1: &str, m2: &str) -> Result<String, String> {
    let q = quiver(eps)?;
    let (a, b) = (module(&q, m1)?, module(&q, m2)?);
    Ok(report(
        "dims",
        &json!({
            "hom": dim_hom(&q, &a, &b), "ext": dim_ext(&q, &a, &b),
            "hom_back": dim_hom(&q, &b, &a), "ext_back": dim_ext(&q, &b, &a),
        }),
    ))
}

/// `T_L^a T_R^b` applied to each module; `text` is the twisted collection file.
pub fn twisted(eps: &str, text: &str, a: i32, b: i32) -> Result<String, String> {
    let q = quiver(eps)?;
    let ms = collection(&q, text)?;
    let w = TwistWord::new(a.into(), b.into());
    let out: Vec<StringModule> = ms.iter().map(|m| twist(&q, m, w)).collect();
    Ok(report("twist", &json!({"modules": out, "text": format_collection(&out)})))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = diagramReport)]
pub fn diagram_report_js(eps: &str, text: &str) -> Result<String, JsError> {
    js(diagram_report(eps, text))
}

#[wasm_bindgen(js_name = homExtDims)]
pub fn dims_js(eps: &str, m1: &str, m2: &str) -> Result<String, JsError> {
    js(dims(eps, m1, m2))
}

#[wasm_bindgen(js_name = twistCollection)]
pub fn twisted_js(eps: &str, text: &str, a: i32, b: i32) -> Result<String, JsError> {
    js(twisted(eps, text, a, b))
}
