# Integration tests package for lamroot
