# Test package for sh-track
