//! Netpbm codec and CSV output.

mod csv;
mod pnm;

pub use csv::{format_sig6, write_csv, CSV_HEADER};
pub use pnm::{decode_pnm, encode_pnm, quantize, BitDepth, PnmError, PnmImage};
