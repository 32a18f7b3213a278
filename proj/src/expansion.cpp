namespace quatrace {}
