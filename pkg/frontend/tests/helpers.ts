/** Small async utilities shared by the suites. */

export interface Deferred {
  promise: Promise<void>;
  resolve: () => void;
}

export function deferred(): Deferred {
  let resolve!: () => void;
  const promise = new Promise<void>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}

/** Poll until the condition holds; fails loudly instead of hanging. */
export async function waitFor(
  check: () => boolean,
  label = "condition",
  timeoutMs = 5000,
): Promise<void> {
  const start = Date.now();
  while (!check()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${label}`);
    }
    await new Promise((r) => setTimeout(r, 10));
  }
}

/** Let pending macrotasks (debounce timers, socket flushes) settle. */
export function settle(ms = 25): Promise<void> {
  return new Promise((r) => setTimeout(r, ms));
}
