export * from './types.js';
export * from './api.js';
export * from './session.js';
export * from './layout.js';
export * from './render.js';
