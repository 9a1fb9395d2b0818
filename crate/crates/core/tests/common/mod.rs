#![allow(dead_code)]

pub mod forms;
pub mod oracle;
pub mod zoo;
