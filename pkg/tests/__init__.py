# Tests package for lamroot
