# Unit tests for RindlerBox
