use std::io::{self, Write};

use super::{Configuration, GridError};

/// Closed rectangle `[i_min, i_max] x [j_min, j_max]` of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Window {
    pub fn new(i_min: i64, i_max: i64, j_min: i64, j_max: i64) -> Result<Self, GridError> {
        if i_min > i_max || j_min > j_max {
            return Err(GridError::EmptyWindow);
        }
        Ok(Window {
            i_min,
            i_max,
            j_min,
            j_max,
        })
    }

    /// `[-radius, radius]^2`.
    pub fn square(radius: u64) -> Self {
        let r = radius as i64;
        Window {
            i_min: -r,
            i_max: r,
            j_min: -r,
            j_max: r,
        }
    }

    pub fn width(&self) -> usize {
        (self.i_max - self.i_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }
}

/// Row-major raster of a window. Row 0 is the top (`j = j_max`), column 0 is
/// the left edge (`i = i_min`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternBitmap {
    origin: (i64, i64),
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl PatternBitmap {
    pub fn rasterize(c: &Configuration, window: Window) -> Self {
        let (width, height) = (window.width(), window.height());
        let mut bits = vec![false; width * height];
        for (i, j) in c.cells() {
            if (window.i_min..=window.i_max).contains(&i)
                && (window.j_min..=window.j_max).contains(&j)
            {
                let col = (i - window.i_min) as usize;
                let row = (window.j_max - j) as usize;
                bits[row * width + col] = true;
            }
        }
        PatternBitmap {
            origin: (window.i_min, window.j_max),
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Lattice coordinates of the top-left pixel.
    pub fn origin(&self) -> (i64, i64) {
        self.origin
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn population(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// The live cells of the raster, back in lattice coordinates.
    pub fn to_configuration(&self, generation: u64) -> Configuration {
        let (i0, j0) = self.origin;
        let cells = (0..self.height).flat_map(|row| {
            (0..self.width)
                .filter(move |&col| self.get(row, col))
                .map(move |col| (i0 + col as i64, j0 - row as i64))
        });
        Configuration::from_cells(cells.collect::<Vec<_>>(), generation)
    }

    /// Binary PGM (`P5`, maxval 255): background 0, live cells 255.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
        let data: Vec<u8> = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        out.write_all(&data)
    }

    /// Plain PBM (`P1`), one text row per raster row; `1` marks a live cell.
    pub fn write_pbm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P1\n{} {}\n", self.width, self.height)?;
        for row in self.bits.chunks(self.width) {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Lays out `frames` left to right, `columns` per row, separated by a
    /// one-pixel gutter. All frames must share the same size.
    pub fn montage(frames: &[PatternBitmap], columns: usize) -> Option<PatternBitmap> {
        let first = frames.first()?;
        let (fw, fh) = (first.width, first.height);
        if columns == 0 || frames.iter().any(|f| f.width != fw || f.height != fh) {
            return None;
        }
        let rows = frames.len().div_ceil(columns);
        let width = columns * fw + columns - 1;
        let height = rows * fh + rows - 1;
        let mut bits = vec![false; width * height];
        for (n, frame) in frames.iter().enumerate() {
            let (x0, y0) = ((n % columns) * (fw + 1), (n / columns) * (fh + 1));
            for row in 0..fh {
                for col in 0..fw {
                    bits[(y0 + row) * width + x0 + col] = frame.get(row, col);
                }
            }
        }
        Some(PatternBitmap {
            origin: first.origin,
            width,
            height,
            bits,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_window_rejected() {
        assert_eq!(Window::new(1, 0, 0, 0).unwrap_err(), GridError::EmptyWindow);
    }

    #[test]
    fn pbm_layout() {
        let c = Configuration::from_cells([(0, 1), (1, 0)], 0);
        let bmp = PatternBitmap::rasterize(&c, Window::new(0, 1, 0, 1).unwrap());
        let mut out = Vec::new();
        bmp.write_pbm(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "P1\n2 2\n1 0\n0 1\n");
    }

    #[test]
    fn pgm_header_and_payload() {
        let bmp = PatternBitmap::rasterize(&Configuration::from_cells([(0, 0)], 0), Window::square(1));
        let mut out = Vec::new();
        bmp.write_pgm(&mut out).unwrap();
        let header = b"P5\n3 3\n255\n";
        assert_eq!(&out[..header.len()], header);
        assert_eq!(&out[header.len()..], &[0, 0, 0, 0, 255, 0, 0, 0, 0]);
    }

    #[test]
    fn raster_is_lossless_inside_window() {
        let c = Configuration::from_cells([(-2, 1), (0, 0), (3, -2), (7, 7)], 5);
        let bmp = PatternBitmap::rasterize(&c, Window::square(3));
        assert_eq!(bmp.population(), 3);
        let back = bmp.to_configuration(5);
        assert_eq!(back, Configuration::from_cells([(-2, 1), (0, 0), (3, -2)], 5));
    }

    #[test]
    fn montage_geometry() {
        let f = PatternBitmap::rasterize(&Configuration::from_cells([(0, 0)], 0), Window::square(1));
        let m = PatternBitmap::montage(&[f.clone(), f.clone(), f], 2).unwrap();
        assert_eq!((m.width(), m.height()), (7, 7));
        assert_eq!(m.population(), 3);
    }
}
