//! Minimal self-contained SVG writer. Domain coordinates have their origin
//! at the top-right corner with `x` growing leftwards and `y` downwards;
//! they are mapped affinely onto the canvas.

use std::fmt::Write;

use arctic_core::ScaledGeometry;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 90.0;

pub struct Figure {
    body: String,
}

impl Default for Figure {
    fn default() -> Self {
        Self::new()
    }
}

impl Figure {
    pub fn new() -> Self {
        Figure { body: String::new() }
    }

    /// Canvas position of the domain point `(x, y)`.
    pub fn map(x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (1.0 - x) * SIZE, MARGIN + y * SIZE)
    }

    /// Axis-aligned rectangle spanning `x0..x1`, `y0..y1` in domain units.
    pub fn rect(&mut self, x0: f64, y0: f64, x1: f64, y1: f64, style: &str) {
        let (a, b) = Self::map(x0.max(x1), y0.min(y1));
        let (w, h) = ((x1 - x0).abs() * SIZE, (y1 - y0).abs() * SIZE);
        let _ = writeln!(self.body, r#"<rect x="{a:.3}" y="{b:.3}" width="{w:.3}" height="{h:.3}" {style}/>"#);
    }

    pub fn polyline(&mut self, pts: impl IntoIterator<Item = (f64, f64)>, style: &str) {
        let mut d = String::new();
        for (x, y) in pts {
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            let (a, b) = Self::map(x, y);
            let _ = write!(d, "{a:.3},{b:.3} ");
        }
        let _ = writeln!(self.body, r#"<polyline points="{}" fill="none" {style}/>"#, d.trim_end());
    }

    pub fn dot(&mut self, x: f64, y: f64, r: f64, style: &str) {
        let (a, b) = Self::map(x, y);
        let _ = writeln!(self.body, r#"<circle cx="{a:.3}" cy="{b:.3}" r="{r}" {style}/>"#);
    }

    pub fn text(&mut self, x: f64, y: f64, anchor: &str, s: &str) {
        let (a, b) = Self::map(x, y);
        let _ = writeln!(self.body, r#"<text x="{a:.3}" y="{b:.3}" text-anchor="{anchor}" font-size="13" font-family="sans-serif">{s}</text>"#);
    }

    pub fn raw(&mut self, s: &str) {
        self.body.push_str(s);
    }

    /// Domain outline with the cut rectangle and `xi` annotations.
    pub fn frame(&mut self, g: Option<&ScaledGeometry>) {
        self.rect(0.0, 0.0, 1.0, 1.0, r##"fill="none" stroke="#000" stroke-width="1""##);
        if let Some(g) = g {
            self.rect(g.xi_x, 0.0, 1.0, g.xi_y, r##"fill="#bbb" stroke="#000" stroke-width="1""##);
            self.text(g.xi_x, 1.0 + 0.04, "middle", &format!("ξx = {:.4}", g.xi_x));
            self.text(-0.012, g.xi_y + 0.006, "start", &format!("ξy = {:.4}", g.xi_y));
            self.polyline([(g.xi_x, 1.0), (g.xi_x, 1.0 + 0.015)], r##"stroke="#000""##);
            self.polyline([(0.0, g.xi_y), (-0.015, g.xi_y)], r##"stroke="#000""##);
        }
        self.text(1.0, -0.02, "middle", "x ←");
        self.text(-0.012, 1.0, "start", "y ↓");
        self.text(0.0, -0.02, "middle", "0");
    }

    pub fn finish(self) -> String {
        let total = SIZE + 2.0 * MARGIN;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Colour for a value in `[0, 1]` on a blue-white-red ramp.
pub fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64, s: f64| (a + (b - a) * s).round() as u8;
    let (r, g, b) = if t < 0.5 {
        let s = 2.0 * t;
        (lerp(49.0, 255.0, s), lerp(84.0, 255.0, s), lerp(160.0, 255.0, s))
    } else {
        let s = 2.0 * t - 1.0;
        (lerp(255.0, 190.0, s), lerp(255.0, 40.0, s), lerp(255.0, 40.0, s))
    };
    format!("#{r:02x}{g:02x}{b:02x}")
}

/// Draws an `n x n` field of cells, each row merged into runs of equal
/// colour. Cell `(i, j)` occupies `x in [j/n, (j+1)/n]`, `y in [i/n, (i+1)/n]`.
pub fn cell_field(fig: &mut Figure, n: usize, colour: impl Fn(usize, usize) -> String) {
    let h = 1.0 / n as f64;
    for i in 0..n {
        let mut j = 0;
        while j < n {
            let c = colour(i, j);
            let mut end = j + 1;
            while end < n && colour(i, end) == c {
                end += 1;
            }
            fig.rect(j as f64 * h, i as f64 * h, end as f64 * h, (i + 1) as f64 * h, &format!(r#"fill="{c}" stroke="none""#));
            j = end;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_map_to_canvas_corners() {
        assert_eq!(Figure::map(0.0, 0.0), (MARGIN + SIZE, MARGIN));
        assert_eq!(Figure::map(1.0, 1.0), (MARGIN, MARGIN + SIZE));
    }

    #[test]
    fn ramp_ends() {
        assert_eq!(ramp(0.5), "#ffffff");
        assert_eq!(ramp(-1.0), ramp(0.0));
    }
}
