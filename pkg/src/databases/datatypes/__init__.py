"""Run registry datatypes."""
