/**
 * Perceptually uniform sequential colormap (viridis), sampled at 33
 * anchors with linear interpolation in between.  Values map linearly
 * onto [0, vmax]; 0 always lands exactly on the colormap floor.
 */

const VIRIDIS_ANCHORS: ReadonlyArray<readonly [number, number, number]> = [
  [0.267004, 0.004874, 0.329415],
  [0.277018, 0.050344, 0.375715],
  [0.282327, 0.094955, 0.417331],
  [0.282884, 0.13592, 0.453427],
  [0.278826, 0.17549, 0.483397],
  [0.270595, 0.214069, 0.507052],
  [0.258965, 0.251537, 0.524736],
  [0.244972, 0.287675, 0.53726],
  [0.229739, 0.322361, 0.545706],
  [0.214298, 0.355619, 0.551184],
  [0.19943, 0.387607, 0.554642],
  [0.185556, 0.41857, 0.556753],
  [0.172719, 0.448791, 0.557885],
  [0.160665, 0.47854, 0.558115],
  [0.149039, 0.508051, 0.55725],
  [0.13777, 0.537492, 0.554906],
  [0.127568, 0.566949, 0.550556],
  [0.120565, 0.596422, 0.543611],
  [0.120638, 0.625828, 0.533488],
  [0.132268, 0.655014, 0.519661],
  [0.157851, 0.683765, 0.501686],
  [0.196571, 0.711827, 0.479221],
  [0.24607, 0.73891, 0.452024],
  [0.304148, 0.764704, 0.419943],
  [0.369214, 0.788888, 0.382914],
  [0.440137, 0.811138, 0.340967],
  [0.515992, 0.831158, 0.294279],
  [0.595839, 0.848717, 0.243329],
  [0.678489, 0.863742, 0.189503],
  [0.762373, 0.876424, 0.137064],
  [0.845561, 0.887322, 0.099702],
  [0.926106, 0.89733, 0.104071],
  [0.993248, 0.906157, 0.143936],
];

function channelToHex(channel: number): string {
  const byte = Math.max(0, Math.min(255, Math.round(channel * 255)));
  return byte.toString(16).padStart(2, "0");
}

/** Hex color for normalized position t in [0, 1] (clamped). */
export function viridis(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const scaled = clamped * (VIRIDIS_ANCHORS.length - 1);
  const lower = Math.min(Math.floor(scaled), VIRIDIS_ANCHORS.length - 2);
  const frac = scaled - lower;
  const low = VIRIDIS_ANCHORS[lower]!;
  const high = VIRIDIS_ANCHORS[lower + 1]!;
  const mix = low.map((c, i) => c + frac * (high[i]! - c));
  return `#${channelToHex(mix[0]!)}${channelToHex(mix[1]!)}${channelToHex(mix[2]!)}`;
}

/** Colormap floor: the color value 0 always maps to. */
export const VIRIDIS_FLOOR = viridis(0);

/**
 * Map a value in [0, vmax] to a colormap position.  A non-positive vmax
 * (flat data) pins everything to the floor.
 */
export function normalize(value: number, vmax: number): number {
  if (!(vmax > 0)) {
    return 0;
  }
  return Math.max(0, Math.min(1, value / vmax));
}
