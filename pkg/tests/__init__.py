# tests du package cauchybeta (unittest + hypothesis)
