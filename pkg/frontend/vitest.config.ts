import { defineConfig } from 'vitest/config';

// Tests run against a real service instance spawned by test/server.ts.
// The happy-dom window shares the service origin so fetches are same-origin.
export default defineConfig({
  test: {
    environment: 'happy-dom',
    environmentOptions: {
      happyDOM: { url: 'http://127.0.0.1:8979' },
    },
    globalSetup: ['./test/server.ts'],
    testTimeout: 30000,
    hookTimeout: 120000,
  },
});
