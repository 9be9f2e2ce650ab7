# Tests package for RindlerBox
