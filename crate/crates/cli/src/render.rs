//! SVG rendering at true scale: vias as circles, one palette color per
//! patterning step, and a rounded capsule behind each multi-via group. All
//! coordinates are emitted with three decimals so output bytes are stable.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use dsamp::layout::Layout;
use dsamp::solver::MergedColoring;

use crate::Failure;

/// Fill colors per patterning step, in step order.
const PALETTE: [&str; 10] = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#dd7755", "#117777",
    "#777711", "#771177",
];
const UNCOLORED: &str = "#999999";
const OUTLINE: &str = "#333333";

#[derive(Args)]
pub struct RenderArgs {
    /// Layout file
    layout: PathBuf,
    /// Output SVG file
    #[arg(long)]
    out: PathBuf,
    /// Coloring file written by solve; omitted leaves all vias gray
    #[arg(long)]
    solution: Option<PathBuf>,
}

pub fn run(args: RenderArgs) -> Result<(), Failure> {
    let layout = crate::load_layout(&args.layout)?;
    let solution = match &args.solution {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let merged = MergedColoring::parse_text(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            if merged.color_of.len() != layout.len() {
                return Err(Failure::input(format!(
                    "solution covers {} vias, layout has {}",
                    merged.color_of.len(),
                    layout.len()
                )));
            }
            if merged.num_colors > PALETTE.len() {
                return Err(Failure::input(format!(
                    "palette exhausted: solution uses {} steps, palette has {}",
                    merged.num_colors,
                    PALETTE.len()
                )));
            }
            Some(merged)
        }
        None => None,
    };
    let svg = draw(&layout, solution.as_ref());
    std::fs::write(&args.out, svg)?;
    println!("rendered {}", args.out.display());
    Ok(())
}

fn draw(layout: &Layout, solution: Option<&MergedColoring>) -> String {
    let d = layout.diameter;
    let margin = 2.0 * d;
    let (min, max) = layout
        .bounding_box()
        .unwrap_or(((0.0, 0.0), (0.0, 0.0)));
    let width = max.0 - min.0 + 2.0 * margin;
    let height = max.1 - min.1 + 2.0 * margin;
    let tx = |x: f64| x - min.0 + margin;
    let ty = |y: f64| max.1 - y + margin;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.3} {height:.3}\" \
         width=\"{width:.3}\" height=\"{height:.3}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    if let Some(merged) = solution {
        // capsule hulls behind the circles, one per multi-via group
        for (ci, groups) in merged.groups_by_color().iter().enumerate() {
            for group in groups {
                if group.len() < 2 {
                    continue;
                }
                let points: Vec<String> = group
                    .iter()
                    .map(|&v| {
                        let via = &layout.vias[v];
                        format!("{:.3},{:.3}", tx(via.x), ty(via.y))
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" \
                     stroke-opacity=\"0.45\" stroke-width=\"{:.3}\" \
                     stroke-linecap=\"round\" stroke-linejoin=\"round\"/>",
                    points.join(" "),
                    PALETTE[ci],
                    1.8 * d
                );
            }
        }
    }
    for via in &layout.vias {
        let fill = match solution {
            Some(merged) => PALETTE[merged.color_of[via.id] - 1],
            None => UNCOLORED,
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"{}\" \
             stroke=\"{}\" stroke-width=\"{:.3}\"/>",
            tx(via.x),
            ty(via.y),
            d / 2.0,
            fill,
            OUTLINE,
            0.08 * d
        );
    }
    out.push_str("</svg>\n");
    out
}
