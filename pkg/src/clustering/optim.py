import numpy as np

from core.exceptions import DivergenceError, ShapeError

from .structures import PARAMETER_NAMES, ModelState

# Parameters shrunk by weight decay; cluster centers are left alone
DECAYED_PARAMETERS = ("W", "W_de")


def adam_step(state, grads, lr, weight_decay, beta1=0.9, beta2=0.999, eps=1e-8):
    """
    One Adam update with decoupled weight decay.

    Args:
        state: ModelState
        grads: mapping of parameter name to gradient (W, W_de, centers)
        lr: learning rate
        weight_decay: shrinkage factor applied to W and W_de as p -= lr * wd * p
        beta1, beta2, eps: Adam constants

    Returns:
        ModelState: new state; the input state is not modified
    """
    step = state.step + 1
    updated = {}
    moments = {}
    for name in PARAMETER_NAMES:
        param = getattr(state, name)
        grad = np.asarray(grads[name], dtype=np.float64)
        first, second = state.moments[name]
        if grad.shape != param.shape or first.shape != param.shape:
            raise ShapeError(f"gradient/moment shape mismatch for {name}: {grad.shape} vs {param.shape}")

        first = beta1 * first + (1.0 - beta1) * grad
        second = beta2 * second + (1.0 - beta2) * grad**2
        first_hat = first / (1.0 - beta1**step)
        second_hat = second / (1.0 - beta2**step)

        new_param = param
        if name in DECAYED_PARAMETERS and weight_decay:
            new_param = new_param - lr * weight_decay * param
        new_param = new_param - lr * first_hat / (np.sqrt(second_hat) + eps)

        updated[name] = new_param
        moments[name] = (first, second)

    new_state = ModelState(moments=moments, step=step, epoch=state.epoch, **updated)
    if not new_state.is_finite():
        raise DivergenceError("parameters became non-finite after Adam step", epoch=state.epoch)
    return new_state
