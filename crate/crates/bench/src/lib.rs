//! Fixtures shared by the benchmarks.

use gl2ode::cartanframe::{assemble_frame, sample_points, ChartPoint, FrameBundle};
use gl2ode::catalog::find_entry;
use gl2ode::parse::OdeSpec;

/// The equation of a catalog entry.
pub fn spec(name: &str) -> OdeSpec {
    find_entry(name).unwrap_or_else(|| panic!("unknown entry {name}")).spec
}

/// The assembled frame of a catalog entry with one regular chart point.
pub fn frame(name: &str) -> (FrameBundle, ChartPoint) {
    let fb = assemble_frame(&spec(name)).expect("catalog frames assemble");
    let point = sample_points(&fb, 1, 1).pop().expect("a regular point");
    (fb, point)
}
