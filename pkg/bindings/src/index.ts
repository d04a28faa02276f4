/**
 * Sliding-window compression penalty as a logits processor.
 *
 * The processor simulates an LZSS-style compressor state over each
 * row's token ids and adds `alpha * penalty` to the row's scores,
 * where the penalty per candidate token is its marginal codelength in
 * bits (constants dropped):
 *
 * - extends the canonical length-l match at follower distance delta:
 *   log2((l+1) * delta) - log2(l * d) - 1
 * - occurs in the lookback window at distance delta: log2(delta)
 * - absent from the window: log2(V)
 *
 * Rows are independent; the handle carries configuration only and the
 * context views are recomputed from the provided ids on every call, so
 * repeated calls with growing prefixes can never drift out of sync.
 */

/** Configuration handle returned by {@link makeProcessor}. */
export interface PenaltyProcessorHandle {
  readonly alpha: number;
  readonly windowCapacity: number;
  readonly bufferCapacity: number;
}

/**
 * Create a processor handle.
 *
 * @param alpha penalty strength, must be >= 0 (0 disables the penalty)
 * @param windowCapacity lookback window size in tokens
 * @param bufferCapacity buffer size in tokens, must be < windowCapacity
 */
export function makeProcessor(
  alpha: number = 0.15,
  windowCapacity: number = 512,
  bufferCapacity: number = 32,
): PenaltyProcessorHandle {
  if (!(alpha >= 0)) {
    throw new RangeError(`alpha must be nonnegative, got ${alpha}`);
  }
  if (!Number.isInteger(windowCapacity) || !Number.isInteger(bufferCapacity)
      || bufferCapacity < 1 || windowCapacity <= bufferCapacity) {
    throw new RangeError(
      `need windowCapacity > bufferCapacity >= 1, got ${windowCapacity}/${bufferCapacity}`,
    );
  }
  return Object.freeze({ alpha, windowCapacity, bufferCapacity });
}

/**
 * Adjust a batch of score rows: `scores[i] + alpha * penalty(inputIds[i])`.
 *
 * @param handle configuration from {@link makeProcessor}
 * @param inputIds one token id sequence per batch row
 * @param scores one score row per batch row; row length is the vocabulary
 * @returns fresh Float64Array rows, inputs untouched
 */
export function process(
  handle: PenaltyProcessorHandle,
  inputIds: ReadonlyArray<ReadonlyArray<number>>,
  scores: ReadonlyArray<ArrayLike<number>>,
): Float64Array[] {
  if (inputIds.length !== scores.length) {
    throw new RangeError(
      `batch mismatch: ${inputIds.length} id rows vs ${scores.length} score rows`,
    );
  }
  return scores.map((row, i) => {
    const out = Float64Array.from(row as ArrayLike<number>);
    if (handle.alpha === 0) return out;
    const penalty = penaltyVector(
      inputIds[i], out.length, handle.windowCapacity, handle.bufferCapacity,
    );
    for (let a = 0; a < out.length; a++) {
      out[a] += handle.alpha * penalty[a];
    }
    return out;
  });
}

/**
 * Penalty value in bits for every token id in [0, vocabSize).
 * Exported for the parity harness; inference loops want {@link process}.
 */
export function penaltyVector(
  tokens: ReadonlyArray<number>,
  vocabSize: number,
  windowCapacity: number,
  bufferCapacity: number,
): Float64Array {
  if (vocabSize < 1) throw new RangeError("vocabSize must be positive");
  for (const t of tokens) {
    if (!Number.isInteger(t) || t < 0 || t >= vocabSize) {
      throw new RangeError(`token id ${t} outside [0, ${vocabSize})`);
    }
  }
  const values = new Float64Array(vocabSize).fill(Math.log2(vocabSize));

  // split into buffer (newest) and window (older) views
  const n = tokens.length;
  const bufLen = Math.min(bufferCapacity, n);
  const winStart = Math.max(0, n - bufLen - windowCapacity);
  const window = tokens.slice(winStart, n - bufLen);
  const buffer = tokens.slice(n - bufLen);
  const wn = window.length;
  if (wn === 0) return values;

  // recency branch: most recent occurrence distance per token
  const occurrence = new Int32Array(vocabSize); // 0 = absent
  for (let j = wn - 1; j >= 0; j--) {
    const a = window[j];
    if (occurrence[a] === 0) occurrence[a] = wn - j;
  }
  for (let a = 0; a < vocabSize; a++) {
    if (occurrence[a] > 0) values[a] = Math.log2(occurrence[a]);
  }

  // extension branch: smallest follower distance per token over every
  // occurrence of the matched suffix; an occurrence ending at the window
  // edge has its follower outside the window and contributes nothing
  const [l, d] = longestSuffixMatch(window, buffer);
  if (l >= 1) {
    const taken = new Uint8Array(vocabSize);
    const oldBlock = Math.log2(l * d);
    for (let j = wn - 2; j >= l - 1; j--) { // newest first: delta ascending
      let hit = true;
      for (let m = 0; m < l; m++) {
        if (window[j - m] !== buffer[buffer.length - 1 - m]) {
          hit = false;
          break;
        }
      }
      if (!hit) continue;
      const follower = window[j + 1];
      if (taken[follower]) continue; // smallest delta already recorded
      taken[follower] = 1;
      const delta = wn - (j + 1);
      values[follower] = Math.log2((l + 1) * delta) - oldBlock - 1;
    }
  }
  return values;
}

/** Longest buffer suffix inside the window: [length, distance], min-d ties. */
function longestSuffixMatch(
  window: ReadonlyArray<number>,
  buffer: ReadonlyArray<number>,
): [number, number] {
  const wn = window.length;
  const bn = buffer.length;
  let bestL = 0;
  let bestD = 0;
  if (wn === 0 || bn === 0) return [0, 0];
  for (let j = wn - 1; j >= 0; j--) {
    let m = 0;
    while (m < bn && m <= j && window[j - m] === buffer[bn - 1 - m]) m++;
    if (m > bestL) {
      bestL = m;
      bestD = wn - j;
      if (bestL === bn) break;
    }
  }
  return [bestL, bestD];
}
