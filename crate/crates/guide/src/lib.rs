// Guide chapters are attached as module docs in lib.rs once written.
