//! Deterministic SVG rendering of geometric artifacts.
//!
//! Coordinates come from exact rationals rendered to 12 significant
//! digits; the output string is a pure function of the input object, so
//! figures are byte-identical across runs. The y axis is flipped to the
//! usual mathematical orientation. Only SVG primitives are emitted
//! (lines and polygons), one `<g>` layer per logical group.

use gmax_core::basis::TriangleFamily;
use gmax_core::geom::ConvexPolygon;
use gmax_core::maximal::LevelSetCertificate;
use gmax_core::perron::{half_triangle_witnesses, Anchor, PerronTree};
use gmax_core::scalar::{decimal_12, rat, to_f64};
use gmax_core::Scalar;

/// One named layer of polygons with a fill color.
pub struct Layer<'a> {
    pub name: &'a str,
    pub fill: &'a str,
    pub polygons: &'a [ConvexPolygon],
}

fn coord(x: &Scalar) -> String {
    decimal_12(x)
}

fn bounding_box(layers: &[Layer]) -> Option<(Scalar, Scalar, Scalar, Scalar)> {
    let mut bb: Option<(Scalar, Scalar, Scalar, Scalar)> = None;
    for layer in layers {
        for poly in layer.polygons {
            for v in poly.vertices() {
                bb = Some(match bb {
                    None => (v.x.clone(), v.y.clone(), v.x.clone(), v.y.clone()),
                    Some((x0, y0, x1, y1)) => (
                        if v.x < x0 { v.x.clone() } else { x0 },
                        if v.y < y0 { v.y.clone() } else { y0 },
                        if v.x > x1 { v.x.clone() } else { x1 },
                        if v.y > y1 { v.y.clone() } else { y1 },
                    ),
                });
            }
        }
    }
    bb
}

/// Render layers of polygons into a standalone SVG document. With no
/// polygons at all, emits a fixed frame with axes only. Errors on a
/// degenerate (zero width or height) bounding box.
pub fn render_layers(layers: &[Layer]) -> Result<String, String> {
    let (x0, y0, x1, y1) = match bounding_box(layers) {
        Some(bb) => bb,
        None => (rat(-1, 1), rat(-1, 1), rat(1, 1), rat(1, 1)),
    };
    if layers.iter().any(|l| !l.polygons.is_empty()) && (x0 == x1 || y0 == y1) {
        return Err("degenerate bounding box".into());
    }
    let w = &x1 - &x0;
    let h = &y1 - &y0;
    let margin_x = &w / rat(20, 1);
    let margin_y = &h / rat(20, 1);
    let vx = &x0 - &margin_x;
    let vw = &w + rat(2, 1) * &margin_x;
    // y flip: viewBox top is -(y1 + margin)
    let vy = -(&y1 + &margin_y);
    let vh = &h + rat(2, 1) * &margin_y;
    let stroke = (to_f64(&vw).max(to_f64(&vh)) / 400.0).max(1e-9);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        coord(&vx),
        coord(&vy),
        coord(&vw),
        coord(&vh)
    ));
    // axes through the origin, clipped to the view
    out.push_str(&format!(
        "  <g class=\"axes\" stroke=\"#888888\" stroke-width=\"{stroke:.6e}\">\n"
    ));
    out.push_str(&format!(
        "    <line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\"/>\n",
        coord(&vx),
        coord(&(&vx + &vw))
    ));
    out.push_str(&format!(
        "    <line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\"/>\n",
        coord(&vy),
        coord(&(&vy + &vh))
    ));
    out.push_str("  </g>\n");
    for layer in layers {
        out.push_str(&format!(
            "  <g class=\"{}\" fill=\"{}\" fill-opacity=\"0.5\" stroke=\"#222222\" stroke-width=\"{stroke:.6e}\">\n",
            layer.name, layer.fill
        ));
        for poly in layer.polygons {
            let pts: Vec<String> = poly
                .vertices()
                .iter()
                .map(|v| format!("{},{}", coord(&v.x), coord(&-&v.y)))
                .collect();
            out.push_str(&format!("    <polygon points=\"{}\"/>\n", pts.join(" ")));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Tree figure: the shifted triangles plus their half-scale witness
/// triangles as a second layer.
pub fn render_tree(tree: &PerronTree) -> Result<String, String> {
    let halves = half_triangle_witnesses(tree, Anchor::BaseBottom).map_err(|e| e.to_string())?;
    render_layers(&[
        Layer {
            name: "triangles",
            fill: "#4878a8",
            polygons: &tree.triangles,
        },
        Layer {
            name: "half-witnesses",
            fill: "#c04848",
            polygons: &halves,
        },
    ])
}

/// Family figure: the fan of thin triangles for the first `k_max`
/// generator indices.
pub fn render_family(family: &TriangleFamily, k_max: usize) -> Result<String, String> {
    let k = k_max.min(family.deltas.len());
    render_layers(&[Layer {
        name: "family",
        fill: "#48a878",
        polygons: &family.deltas[..k],
    }])
}

/// Certificate figure: the certified level-set parts. An empty
/// certificate renders as a valid document with axes only.
pub fn render_certificate(cert: &LevelSetCertificate) -> Result<String, String> {
    render_layers(&[Layer {
        name: "level-set-parts",
        fill: "#a87848",
        polygons: &cert.parts,
    }])
}
