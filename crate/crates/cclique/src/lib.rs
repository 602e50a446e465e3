// SPDX-License-Identifier: Apache-2.0

//! File formats, generators and harnesses around `cclique-core`.

pub mod bench;
pub mod generate;
pub mod io;
pub mod verify;
