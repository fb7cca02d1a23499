# Command line interface and algebra file format
