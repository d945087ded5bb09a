"""Knowledge-graph driven access point selection for heterogeneous wireless networks."""
