//! Raster projection of spectrum clouds and the CSV/PGM emitters.

use super::{ExploreError, SpectrumCloud};

/// Axis-aligned box in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Default for Window {
    /// `[-1.1, 1.1]²`: visible margin around the unit disc, beyond which
    /// no hull-spectrum point of a finite group can fall.
    fn default() -> Self {
        Window {
            re_min: -1.1,
            re_max: 1.1,
            im_min: -1.1,
            im_max: 1.1,
        }
    }
}

/// Counting grid over a window, row-major from the top-left cell.
#[derive(Debug, Clone)]
pub struct RasterGrid {
    resolution: usize,
    window: Window,
    counts: Vec<u32>,
    out_of_window: u64,
}

impl RasterGrid {
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Row-major counts, row 0 at the top of the window.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count_at(&self, row: usize, col: usize) -> u32 {
        self.counts[row * self.resolution + col]
    }

    /// Points that fell outside the window (counted, never binned).
    pub fn out_of_window(&self) -> u64 {
        self.out_of_window
    }

    pub fn total_in_window(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Plain PGM (`P2`): width, height, maxval = largest count, then the
    /// row-major counts. An all-zero grid writes maxval 1 because the
    /// format requires a positive maxval.
    pub fn to_pgm(&self) -> String {
        let maxval = self.counts.iter().copied().max().unwrap_or(0).max(1);
        let mut out = String::new();
        out.push_str("P2\n");
        out.push_str(&format!("{} {}\n", self.resolution, self.resolution));
        out.push_str(&format!("{maxval}\n"));
        for row in 0..self.resolution {
            let cells: Vec<String> = (0..self.resolution)
                .map(|col| self.count_at(row, col).to_string())
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Bin every in-window cloud point into exactly one cell.
///
/// Cells are half-open: a point lands in column `floor((re - re_min)/w)` and
/// row `floor((im_max - im)/h)`, so the window is inclusive on its left/top
/// edges and exclusive on right/bottom. Out-of-window points are tallied
/// separately.
pub fn rasterize(
    cloud: &SpectrumCloud,
    resolution: usize,
    window: Window,
) -> Result<RasterGrid, ExploreError> {
    if resolution < 2 {
        return Err(ExploreError::BadParameter {
            what: format!("raster resolution must be at least 2, got {resolution}"),
        });
    }
    if !(window.re_min < window.re_max && window.im_min < window.im_max) {
        return Err(ExploreError::BadParameter {
            what: "raster window is empty".into(),
        });
    }
    let res = resolution as f64;
    let cell_w = (window.re_max - window.re_min) / res;
    let cell_h = (window.im_max - window.im_min) / res;
    let mut counts = vec![0u32; resolution * resolution];
    let mut out_of_window = 0u64;
    for p in &cloud.points {
        let col_f = (p.value.re - window.re_min) / cell_w;
        let row_f = (window.im_max - p.value.im) / cell_h;
        if col_f < 0.0 || col_f >= res || row_f < 0.0 || row_f >= res {
            out_of_window += 1;
            continue;
        }
        let col = col_f.floor() as usize;
        let row = row_f.floor() as usize;
        counts[row * resolution + col] += 1;
    }
    Ok(RasterGrid {
        resolution,
        window,
        counts,
        out_of_window,
    })
}

/// Cloud CSV: header `sample_id,re,im`, one row per eigenvalue, LF endings,
/// 17-significant-digit scientific notation (full `f64` round trip).
pub fn cloud_to_csv(cloud: &SpectrumCloud) -> String {
    let mut out = String::with_capacity(cloud.points.len() * 48 + 16);
    out.push_str("sample_id,re,im\n");
    for p in &cloud.points {
        out.push_str(&format!(
            "{},{:.16e},{:.16e}\n",
            p.sample_id, p.value.re, p.value.im
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::{sample_cloud, CloudPoint, SampleStrategy};
    use crate::groups::{permutation_group, PermutationKind};
    use crate::regions::{union_contains, Region};
    use num_complex::Complex64;

    fn empty_cloud() -> SpectrumCloud {
        SpectrumCloud {
            points: Vec::new(),
            failures: Vec::new(),
            seed: 0,
            group_name: "test".into(),
            strategy: "uniform-simplex",
            samples_requested: 0,
            samples_run: 0,
        }
    }

    fn singleton_cloud(value: Complex64) -> SpectrumCloud {
        SpectrumCloud {
            points: vec![CloudPoint {
                value,
                sample_id: 0,
            }],
            ..empty_cloud()
        }
    }

    #[test]
    fn empty_cloud_rasterizes_to_zeros() {
        let grid = rasterize(&empty_cloud(), 4, Window::default()).unwrap();
        assert!(grid.counts().iter().all(|&c| c == 0));
        assert_eq!(grid.out_of_window(), 0);
        assert_eq!(grid.total_in_window(), 0);
    }

    #[test]
    fn center_point_lands_bottom_right_at_resolution_two() {
        let cloud = singleton_cloud(Complex64::new(0.0, 0.0));
        let grid = rasterize(&cloud, 2, Window::default()).unwrap();
        assert_eq!(grid.count_at(1, 1), 1);
        assert_eq!(grid.total_in_window(), 1);
        assert_eq!(
            grid.counts().iter().filter(|&&c| c > 0).count(),
            1,
            "exactly one cell incremented"
        );
    }

    #[test]
    fn out_of_window_points_are_tallied() {
        let cloud = singleton_cloud(Complex64::new(5.0, 0.0));
        let grid = rasterize(&cloud, 2, Window::default()).unwrap();
        assert_eq!(grid.total_in_window(), 0);
        assert_eq!(grid.out_of_window(), 1);

        // right edge is exclusive by the half-open convention
        let edge = singleton_cloud(Complex64::new(1.1, 0.0));
        let grid = rasterize(&edge, 2, Window::default()).unwrap();
        assert_eq!(grid.out_of_window(), 1);
        // left edge is inclusive
        let left = singleton_cloud(Complex64::new(-1.1, 0.0));
        let grid = rasterize(&left, 2, Window::default()).unwrap();
        assert_eq!(grid.out_of_window(), 0);
        assert_eq!(grid.count_at(1, 0), 1);
    }

    #[test]
    fn s3_raster_respects_region_up_to_one_cell() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        let cloud = sample_cloud(&g, 4000, 6, 3, SampleStrategy::UniformSimplex).unwrap();
        let resolution = 256;
        let grid = rasterize(&cloud, resolution, Window::default()).unwrap();
        assert_eq!(grid.out_of_window(), 0);
        assert_eq!(grid.total_in_window() as usize, cloud.points.len());

        let region = [Region::Polygon(2), Region::Polygon(3)];
        let window = Window::default();
        let cell_w = (window.re_max - window.re_min) / resolution as f64;
        let cell_h = (window.im_max - window.im_min) / resolution as f64;
        let diagonal = (cell_w * cell_w + cell_h * cell_h).sqrt();
        for row in 0..resolution {
            for col in 0..resolution {
                if grid.count_at(row, col) == 0 {
                    continue;
                }
                let center = Complex64::new(
                    window.re_min + (col as f64 + 0.5) * cell_w,
                    window.im_max - (row as f64 + 0.5) * cell_h,
                );
                let m = union_contains(&region, center).unwrap();
                assert!(
                    m.margin >= -diagonal,
                    "occupied cell ({row}, {col}) centered {center} is {} outside",
                    -m.margin
                );
            }
        }
    }

    #[test]
    fn pgm_format_is_plain_p2() {
        let cloud = singleton_cloud(Complex64::new(0.0, 0.0));
        let grid = rasterize(&cloud, 2, Window::default()).unwrap();
        assert_eq!(grid.to_pgm(), "P2\n2 2\n1\n0 0\n0 1\n");

        let empty = rasterize(&empty_cloud(), 2, Window::default()).unwrap();
        assert_eq!(empty.to_pgm(), "P2\n2 2\n1\n0 0\n0 0\n");
    }

    #[test]
    fn csv_round_trips_float_bits() {
        let value = Complex64::new(-0.55139235760014738, 0.33272847557640678);
        let cloud = singleton_cloud(value);
        let csv = cloud_to_csv(&cloud);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("sample_id,re,im"));
        let row = lines.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], "0");
        assert_eq!(
            fields[1].parse::<f64>().unwrap().to_bits(),
            value.re.to_bits()
        );
        assert_eq!(
            fields[2].parse::<f64>().unwrap().to_bits(),
            value.im.to_bits()
        );
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn rejects_degenerate_rasters() {
        assert!(rasterize(&empty_cloud(), 1, Window::default()).is_err());
        let bad = Window {
            re_min: 1.0,
            re_max: -1.0,
            im_min: -1.0,
            im_max: 1.0,
        };
        assert!(rasterize(&empty_cloud(), 4, bad).is_err());
    }
}
