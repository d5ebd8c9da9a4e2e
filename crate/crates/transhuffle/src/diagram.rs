//! Wiring-ladder diagrams of shuffles: one vertical line per position,
//! steps drawn top to bottom as horizontal connectors labeled with their
//! probabilities.  Output is deterministic byte-for-byte for a fixed input.

use crate::prob::Prob;
use crate::shuffle::Shuffle;

/// SVG styling constants.
pub const SVG_MARGIN: usize = 40;
pub const SVG_COLUMN_SPACING: usize = 60;
pub const SVG_ROW_SPACING: usize = 32;
pub const SVG_LABEL_OFFSET: usize = 14;
pub const SVG_ENDPOINT_RADIUS: usize = 3;
pub const SVG_FONT_SIZE: usize = 14;

fn prob_label(p: &Prob) -> String {
    match p {
        Prob::Exact(r) => {
            if r.denom() == &num_bigint::BigInt::from(1) {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Prob::Real(x) => format!("{x:.6}"),
    }
}

/// One horizontal rung per step, endpoints marked, probability printed to
/// the right of the last vertical.
pub fn svg(shuffle: &Shuffle) -> String {
    let n = shuffle.n();
    let ell = shuffle.len();
    let col = |i: usize| SVG_MARGIN + (i - 1) * SVG_COLUMN_SPACING;
    let row = |j: usize| SVG_MARGIN + j * SVG_ROW_SPACING;
    let width = SVG_MARGIN + col(n.max(1)) + 4 * SVG_COLUMN_SPACING / 2;
    let height = row(ell + 1) + SVG_MARGIN / 2;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"serif\" font-size=\"{SVG_FONT_SIZE}\">\n"
    ));
    for i in 1..=n {
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{i}</text>\n",
            col(i),
            SVG_MARGIN - SVG_LABEL_OFFSET
        ));
        out.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
            row(0),
            row(ell + 1),
            x = col(i)
        ));
    }
    for (j, step) in shuffle.steps().iter().enumerate() {
        let y = row(j + 1);
        let (xa, xb) = (col(step.b().min(step.a())), col(step.a().max(step.b())));
        out.push_str(&format!(
            "  <line x1=\"{xa}\" y1=\"{y}\" x2=\"{xb}\" y2=\"{y}\" stroke=\"black\"/>\n"
        ));
        for x in [xa, xb] {
            out.push_str(&format!(
                "  <circle cx=\"{x}\" cy=\"{y}\" r=\"{SVG_ENDPOINT_RADIUS}\"/>\n"
            ));
        }
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">{}</text>\n",
            col(n.max(1)) + SVG_LABEL_OFFSET,
            y + SVG_FONT_SIZE / 3,
            prob_label(step.p())
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Text ladder: a header of position labels, then one row per step with a
/// probability column on the right.
pub fn ascii(shuffle: &Shuffle) -> String {
    let n = shuffle.n();
    const CELL: usize = 4;
    let mut out = String::new();
    let mut header = String::new();
    for i in 1..=n {
        header.push_str(&format!("{i:<CELL$}"));
    }
    out.push_str(header.trim_end());
    out.push('\n');
    let rail = |row: &mut String| {
        for _ in 1..=n {
            row.push('|');
            row.push_str(&" ".repeat(CELL - 1));
        }
    };
    let mut top = String::new();
    rail(&mut top);
    out.push_str(top.trim_end());
    out.push('\n');
    for step in shuffle.steps() {
        let (a, b) = (step.a().min(step.b()), step.a().max(step.b()));
        let mut row = String::new();
        for i in 1..=n {
            let mark = if i == a || i == b { '+' } else { '|' };
            row.push(mark);
            let filler = if i >= a && i < b { '-' } else { ' ' };
            row.push_str(&filler.to_string().repeat(CELL - 1));
        }
        while row.len() < n * CELL + 2 {
            row.push(' ');
        }
        row.push_str(&prob_label(step.p()));
        out.push_str(row.trim_end());
        out.push('\n');
    }
    let mut bottom = String::new();
    rail(&mut bottom);
    out.push_str(bottom.trim_end());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simple_shuffle_from_word;
    use crate::words::bubble_sort_word;

    fn word_shuffle(n: usize) -> Shuffle {
        simple_shuffle_from_word(&bubble_sort_word(n))
    }

    #[test]
    fn svg_is_deterministic_with_expected_counts() {
        let shuffle = word_shuffle(5);
        let first = svg(&shuffle);
        assert_eq!(first, svg(&shuffle));
        let verticals = first.matches("<line").count();
        // 5 rails + 10 rungs
        assert_eq!(verticals, 15);
        assert!(first.contains(">1/2<"));
        assert!(first.contains(">4/5<"));
    }

    #[test]
    fn empty_shuffle_has_rails_only() {
        let shuffle = Shuffle::new(3, vec![]).unwrap();
        let image = svg(&shuffle);
        assert_eq!(image.matches("<line").count(), 3);
        assert_eq!(image.matches("<circle").count(), 0);
    }

    #[test]
    fn ascii_ladder_shape() {
        let shuffle = word_shuffle(3);
        let text = ascii(&shuffle);
        let lines: Vec<&str> = text.lines().collect();
        // header + top rail + 3 steps + bottom rail
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "1   2   3");
        assert!(lines[2].starts_with("+---+"));
        assert!(lines[2].ends_with("1/2"));
        assert!(lines[3].ends_with("2/3"));
    }
}
