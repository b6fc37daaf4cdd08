/** Spawns the real annotation/session service for the round-trip tests. */

import { spawn, type ChildProcess } from 'node:child_process';

export const BASE_URL = 'http://127.0.0.1:8979';

let server: ChildProcess | null = null;

async function waitForReady(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE_URL}/al/curve`);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 300));
  }
  throw new Error(`service did not come up: ${String(lastError)}`);
}

export default async function setup(): Promise<() => void> {
  server = spawn('python3', ['-m', 'nsukit.cli', 'serve', '--port', '8979'], {
    cwd: new URL('../..', import.meta.url).pathname,
    stdio: ['ignore', 'inherit', 'inherit'],
  });
  server.on('exit', (code) => {
    if (code && code !== 0) {
      console.error(`service exited with code ${code}`);
    }
  });
  await waitForReady(60000);
  return () => {
    server?.kill();
    server = null;
  };
}
