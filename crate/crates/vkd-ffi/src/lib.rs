//! C ABI surface for the vkd library. See build.rs / vkd.h for the header.
