"""Turn a photo of a hand-drawn human figure into an animated character.

The pipeline: segment the figure from the photo, triangulate it into a
textured mesh, fit a skeleton, retarget skeletal motion capture onto the
skeleton with per-limb projection planes, deform the mesh as-rigidly-as-
possible, and rasterize the result to PNG frames or an animated GIF.
"""

__version__ = "0.1.0"
