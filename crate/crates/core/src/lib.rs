//! Blind image watermarking with mask-guided adaptive strength.
//!
//! A 4×4 binary logo is hidden in the level-2 wavelet detail subbands of the
//! five 128×128 blocks of a 512×512 grayscale host that overlap least with
//! segmentation masks. Each 8×8 sub-block stores one bit in the ordering of
//! a mid-frequency DCT coefficient pair; the gap enforced between the pair
//! comes from an embedding map that is weaker on objects of interest.
//!
//! ```
//! use maskmark_core::{codec, fixtures, metrics};
//!
//! let scene = &fixtures::corpus()[0];
//! let params = scene.params(0.3, 1.0).unwrap();
//! let logo = maskmark_core::Logo::default();
//! let marked = codec::embed(&scene.host, &params, &logo, &Default::default()).unwrap();
//! let found = codec::extract(&marked.watermarked, &marked.side_info).unwrap();
//! assert_eq!(metrics::ber(&logo, &found.logo), 0.0);
//! ```

pub mod attacks;
pub mod codec;
mod error;
pub mod fixtures;
pub mod metrics;
pub mod raster_io;
pub mod strength_map;
pub mod transforms;

pub use error::{Error, Result};
pub use raster_io::{BinaryMask, Logo, Raster, SideInfo};
