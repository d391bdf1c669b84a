//! Static SVG drawings. Coordinates are exact rationals rounded to decimal
//! strings; the exact values ride along in `data-*` attributes.

use std::fmt::Write;

use clap::ValueEnum;
use ldp12::identity::dual_chain_sum;
use ldp12::{refined_fan, spanning_fan, LatticePoint, LatticePolygon, Rational, RationalPoint, Result};

const DIGITS: u32 = 6;
const PX_PER_UNIT: i64 = 40;
/// Wider drawings skip the lattice grid.
const MAX_GRID: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Polygon,
    Dual,
    Sails,
    DualChain,
}

fn dec(r: &Rational) -> String {
    r.to_decimal(DIGITS)
}

fn xy(p: &RationalPoint) -> (String, String) {
    // flip y so that up is up
    (dec(&p.x), dec(&-&p.y))
}

fn points_attr(ps: &[RationalPoint]) -> String {
    ps.iter()
        .map(|p| {
            let (x, y) = xy(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn exact_attr(ps: &[RationalPoint]) -> String {
    ps.iter()
        .map(|p| format!("{} {}", p.x, p.y))
        .collect::<Vec<_>>()
        .join(";")
}

struct Canvas {
    body: String,
    min: (i64, i64),
    max: (i64, i64),
}

impl Canvas {
    fn new(extent: &[RationalPoint]) -> Self {
        let mut min = (0i64, 0i64);
        let mut max = (0i64, 0i64);
        for p in extent {
            let fx = i64::try_from(p.x.floor()).unwrap_or(i64::MIN / 4);
            let cx = i64::try_from(p.x.ceil()).unwrap_or(i64::MAX / 4);
            let fy = i64::try_from(p.y.floor()).unwrap_or(i64::MIN / 4);
            let cy = i64::try_from(p.y.ceil()).unwrap_or(i64::MAX / 4);
            min = (min.0.min(fx), min.1.min(fy));
            max = (max.0.max(cx), max.1.max(cy));
        }
        let (min, max) = ((min.0 - 1, min.1 - 1), (max.0 + 1, max.1 + 1));
        let mut c = Canvas {
            body: String::new(),
            min,
            max,
        };
        c.grid();
        c
    }

    fn grid(&mut self) {
        if self.max.0 - self.min.0 > MAX_GRID || self.max.1 - self.min.1 > MAX_GRID {
            return;
        }
        self.body.push_str("  <g class=\"grid\">\n");
        for x in self.min.0..=self.max.0 {
            for y in self.min.1..=self.max.1 {
                let class = if x == 0 && y == 0 {
                    "origin"
                } else {
                    "lattice-point"
                };
                let r = if class == "origin" { "0.12" } else { "0.05" };
                let _ = writeln!(
                    self.body,
                    "    <circle class=\"{class}\" cx=\"{x}\" cy=\"{}\" r=\"{r}\"/>",
                    -y
                );
            }
        }
        self.body.push_str("  </g>\n");
    }

    fn polygon(&mut self, class: &str, ps: &[RationalPoint]) {
        let _ = writeln!(
            self.body,
            "  <polygon class=\"{class}\" points=\"{}\" data-vertices=\"{}\"/>",
            points_attr(ps),
            exact_attr(ps)
        );
    }

    fn vertices(&mut self, ps: &[RationalPoint]) {
        for p in ps {
            let (x, y) = xy(p);
            let _ = writeln!(
                self.body,
                "  <circle class=\"vertex\" cx=\"{x}\" cy=\"{y}\" r=\"0.08\" data-x=\"{}\" data-y=\"{}\"/>",
                p.x, p.y
            );
        }
    }

    fn segment(&mut self, class: &str, a: &RationalPoint, b: &RationalPoint, extra: &str) {
        let ((x1, y1), (x2, y2)) = (xy(a), xy(b));
        let _ = writeln!(
            self.body,
            "  <line class=\"{class}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" \
             data-from=\"{} {}\" data-to=\"{} {}\"{extra}/>",
            a.x, a.y, b.x, b.y
        );
    }

    fn finish(self, title: &str) -> String {
        let (w, h) = (self.max.0 - self.min.0, self.max.1 - self.min.1);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {w} {h}\">",
            w * PX_PER_UNIT,
            h * PX_PER_UNIT,
            self.min.0,
            -self.max.1
        );
        let _ = writeln!(out, "  <title>{title}</title>");
        out.push_str(
            "  <style>\n\
             \x20   .lattice-point { fill: #999; }\n\
             \x20   .origin { fill: #444; }\n\
             \x20   .polygon { fill: #cde; stroke: #246; stroke-width: 0.04; }\n\
             \x20   .dual { fill: #edc; stroke: #642; stroke-width: 0.04; }\n\
             \x20   .sail { fill: #9bd; stroke: none; }\n\
             \x20   .vertex { fill: #24a; }\n\
             \x20   .ray { stroke: #222; stroke-width: 0.03; }\n\
             \x20   .dual-edge { stroke-width: 0.06; }\n\
             \x20   .positive { stroke: #c22; }\n\
             \x20   .negative { stroke: #22c; }\n\
             \x20   .degenerate { stroke: #888; }\n\
             \x20 </style>\n",
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn rational(ps: &[LatticePoint]) -> Vec<RationalPoint> {
    ps.iter().map(LatticePoint::to_rational).collect()
}

pub fn render(p: &LatticePolygon, figure: Figure) -> Result<String> {
    p.check_ldp()?;
    let verts = rational(p.vertices());
    let dual = p.dual()?;
    Ok(match figure {
        Figure::Polygon => {
            let mut c = Canvas::new(&verts);
            c.polygon("polygon", &verts);
            c.vertices(&verts);
            c.finish("polygon")
        }
        Figure::Dual => {
            let mut c = Canvas::new(dual.vertices());
            c.polygon("dual", dual.vertices());
            c.vertices(dual.vertices());
            c.finish("dual polygon")
        }
        Figure::Sails => {
            let mut c = Canvas::new(&verts);
            c.polygon("polygon", &verts);
            for cone in spanning_fan(p)? {
                let mut region = vec![RationalPoint::from(&LatticePoint::origin())];
                region.extend(rational(&cone.sail_chain()));
                c.polygon("sail", &region);
            }
            let origin = LatticePoint::origin().to_rational();
            for ray in refined_fan(p)?.rays() {
                c.segment("ray", &origin, &ray.to_rational(), "");
            }
            c.vertices(&verts);
            c.finish("sails and refined fan")
        }
        Figure::DualChain => {
            let fan = refined_fan(p)?;
            let fs = rational(&fan.cone_functionals());
            let chain = dual_chain_sum(p)?;
            let mut c = Canvas::new(&fs);
            c.polygon("dual", dual.vertices());
            let n = fs.len();
            for (i, det) in chain.dets.iter().enumerate() {
                let d = Rational::from(det);
                let sign = if d.is_positive() {
                    "positive"
                } else if d.is_negative() {
                    "negative"
                } else {
                    "degenerate"
                };
                let extra = format!(" data-det=\"{det}\"");
                c.segment(&format!("dual-edge {sign}"), &fs[(i + n - 1) % n], &fs[i], &extra);
            }
            c.finish("dual chain")
        }
    })
}
