from .settings import FLOOR_FRACTION, FRAME_RATE, GOP_COUNT, SUPER_GOP_FRAMES
