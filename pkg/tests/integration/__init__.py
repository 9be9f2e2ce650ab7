# Integration tests for RindlerBox
