namespace hexcol {}
