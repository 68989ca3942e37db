//! Scatter plots of one data point's 2D projection.
//!
//! Coordinates map to a fixed 600 x 600 view box: the origin goes to the
//! center (300, 300), both axes share the scale `240 / m` where `m` is the
//! largest absolute coordinate, and y grows upwards.

use std::fmt::Write as _;

pub const SIZE: f64 = 600.0;
const HALF: f64 = SIZE / 2.0;
const REACH: f64 = 240.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Noun,
    Denominal,
    RootVerb,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Noun => "noun",
            Role::Denominal => "denominal",
            Role::RootVerb => "root_verb",
        }
    }
}

pub struct PlotItem<'a> {
    pub role: Role,
    pub label: &'a str,
    pub xy: [f64; 2],
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_view(xy: [f64; 2], scale: f64) -> (f64, f64) {
    (HALF + xy[0] * scale, HALF - xy[1] * scale)
}

fn glyph(out: &mut String, role: Role, x: f64, y: f64) {
    let _ = match role {
        Role::Noun => writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="12" height="12" fill="#1f77b4"/>"##,
            x - 6.0,
            y - 6.0
        ),
        Role::Denominal => writeln!(
            out,
            r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#d62728"/>"##,
            x,
            y - 8.0,
            x - 7.0,
            y + 6.0,
            x + 7.0,
            y + 6.0
        ),
        Role::RootVerb => writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#2ca02c"/>"##
        ),
    };
}

pub fn render(title: &str, items: &[PlotItem]) -> String {
    let m = items
        .iter()
        .flat_map(|i| i.xy)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if m > 0.0 { REACH / m } else { 1.0 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}" font-family="sans-serif" font-size="12">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(
        out,
        r#"<text x="300" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        escape(title)
    );
    out.push_str("<line x1=\"40\" y1=\"300\" x2=\"560\" y2=\"300\" stroke=\"#ccc\"/>\n");
    out.push_str("<line x1=\"300\" y1=\"40\" x2=\"300\" y2=\"560\" stroke=\"#ccc\"/>\n");
    for item in items {
        let (x, y) = to_view(item.xy, scale);
        glyph(&mut out, item.role, x, y);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 9.0,
            y - 9.0,
            escape(item.label)
        );
    }
    for (i, role) in [Role::Noun, Role::Denominal, Role::RootVerb]
        .into_iter()
        .enumerate()
    {
        let y = 500.0 + 22.0 * i as f64;
        glyph(&mut out, role, 460.0, y);
        let _ = writeln!(
            out,
            r#"<text x="474" y="{:.2}">{}</text>"#,
            y + 4.0,
            role.as_str().replace('_', " ")
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform() {
        assert_eq!(to_view([0.0, 0.0], 2.0), (300.0, 300.0));
        assert_eq!(to_view([1.0, 1.0], 240.0), (540.0, 60.0));
    }

    #[test]
    fn escapes_labels() {
        let s = render(
            "p<0>",
            &[PlotItem {
                role: Role::Noun,
                label: "a&b",
                xy: [1.0, 0.0],
            }],
        );
        assert!(s.contains("p&lt;0&gt;") && s.contains("a&amp;b"));
        assert!(s.contains(r#"viewBox="0 0 600 600""#));
    }
}
