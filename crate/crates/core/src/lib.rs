pub mod catalog;
pub mod certificate;
pub mod cochains;
pub mod correspondence;
pub mod cyclotomic;
pub mod extension;
pub mod groups;
pub mod instance;
pub mod selftest;
pub mod twisted_algebra;
pub mod twists;
pub mod zmodlin;
